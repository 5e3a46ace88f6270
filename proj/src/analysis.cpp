#include "lexinfo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "lexinfo/errors.hpp"
#include "lexinfo/numerics.hpp"
#include "lexinfo/rng.hpp"

namespace lexinfo {

BinningResult bin_initial_final(const std::vector<SurprisalRecord>& records) {
    std::map<int, std::vector<const SurprisalRecord*>> by_word;
    for (const SurprisalRecord& r : records) by_word[r.word_id].push_back(&r);

    BinningResult out;
    double pooled_i = 0.0, pooled_f = 0.0;
    for (auto& [word_id, recs] : by_word) {
        std::sort(recs.begin(), recs.end(),
                  [](const SurprisalRecord* a, const SurprisalRecord* b) {
                      return a->position < b->position;
                  });
        const std::size_t e = recs.size();
        if (e < 2) {
            ++out.excluded_short;
            continue;
        }
        const std::size_t half = e / 2;  // floor(E/2); odd E drops the middle
        double init_sum = 0.0, fin_sum = 0.0;
        for (std::size_t i = 0; i < half; ++i) {
            init_sum += recs[i]->bits;
            fin_sum += recs[e - half + i]->bits;
        }
        out.words.push_back({word_id, init_sum / static_cast<double>(half),
                             fin_sum / static_cast<double>(half)});
        pooled_i += init_sum;
        pooled_f += fin_sum;
        out.pooled_initial_n += half;
        out.pooled_final_n += half;
    }
    if (out.pooled_initial_n > 0) {
        out.pooled_initial_mean = pooled_i / static_cast<double>(out.pooled_initial_n);
        out.pooled_final_mean = pooled_f / static_cast<double>(out.pooled_final_n);
    }
    return out;
}

namespace {

std::string direction_of(double statistic) {
    if (statistic > 0.0) return "initial";
    if (statistic < 0.0) return "final";
    return "none";
}

}  // namespace

TestResult paired_permutation_test(const std::vector<BinnedWord>& words,
                                   std::size_t n_permutations, std::uint64_t seed) {
    if (words.size() < 2) throw InputError("paired permutation test needs at least 2 words");
    std::vector<double> diffs;
    diffs.reserve(words.size());
    for (const BinnedWord& w : words) diffs.push_back(w.diff());
    const double n = static_cast<double>(diffs.size());
    const double observed = std::accumulate(diffs.begin(), diffs.end(), 0.0) / n;

    Rng rng(seed);
    std::size_t k = 0;
    const double threshold = std::fabs(observed) - 1e-12;
    for (std::size_t p = 0; p < n_permutations; ++p) {
        double sum = 0.0;
        for (double d : diffs) sum += rng.bernoulli(0.5) ? -d : d;
        if (std::fabs(sum / n) >= threshold) ++k;
    }

    TestResult r;
    r.statistic = observed;
    r.p_value = static_cast<double>(k + 1) / static_cast<double>(n_permutations + 1);
    r.n_words = words.size();
    r.direction = direction_of(observed);
    return r;
}

TestResult pooled_permutation_test(const std::vector<BinnedWord>& words,
                                   std::size_t n_permutations, std::uint64_t seed) {
    if (words.size() < 2) throw InputError("pooled permutation test needs at least 2 words");
    std::vector<double> pool;
    pool.reserve(2 * words.size());
    for (const BinnedWord& w : words) pool.push_back(w.initial_mean);
    for (const BinnedWord& w : words) pool.push_back(w.final_mean);
    const std::size_t n = words.size();
    auto group_diff = [&](const std::vector<double>& v) {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < n; ++i) a += v[i];
        for (std::size_t i = n; i < 2 * n; ++i) b += v[i];
        return (a - b) / static_cast<double>(n);
    };
    const double observed = group_diff(pool);

    Rng rng(seed);
    std::vector<double> shuffled = pool;
    std::size_t k = 0;
    const double threshold = std::fabs(observed) - 1e-12;
    for (std::size_t p = 0; p < n_permutations; ++p) {
        rng.shuffle(shuffled);
        if (std::fabs(group_diff(shuffled)) >= threshold) ++k;
    }

    TestResult r;
    r.statistic = observed;
    r.p_value = static_cast<double>(k + 1) / static_cast<double>(n_permutations + 1);
    r.n_words = words.size();
    r.direction = direction_of(observed);
    return r;
}

std::vector<bool> bh_correct(const std::vector<double>& p_values, double alpha) {
    if (p_values.empty()) throw InputError("bh_correct: no p-values given");
    for (double p : p_values)
        if (!(p > 0.0 && p <= 1.0)) throw InputError("bh_correct: p-values must lie in (0, 1]");

    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

    std::size_t cutoff = 0;  // number of rejected hypotheses
    for (std::size_t k = m; k >= 1; --k) {
        if (p_values[order[k - 1]] <=
            static_cast<double>(k) / static_cast<double>(m) * alpha) {
            cutoff = k;
            break;
        }
    }
    std::vector<bool> reject(m, false);
    for (std::size_t i = 0; i < cutoff; ++i) reject[order[i]] = true;
    return reject;
}

SlopeResult length_slope(const std::vector<SurprisalRecord>& records, SlopeRestriction restriction,
                         std::size_t n_permutations, std::uint64_t seed) {
    // Word length = number of non-terminal records of that word.
    std::map<int, std::size_t> word_len;
    for (const SurprisalRecord& r : records)
        if (!r.is_terminal()) ++word_len[r.word_id];

    std::vector<double> lengths, bits;
    for (const SurprisalRecord& r : records) {
        if (restriction == SlopeRestriction::FirstTwoOnly &&
            (r.is_terminal() || r.position < 1 || r.position > 2))
            continue;
        auto it = word_len.find(r.word_id);
        if (it == word_len.end()) continue;  // terminal-only word
        lengths.push_back(static_cast<double>(it->second));
        bits.push_back(r.bits);
    }
    if (lengths.size() < 2) throw InputError("length_slope: not enough records");
    const double min_len = *std::min_element(lengths.begin(), lengths.end());
    const double max_len = *std::max_element(lengths.begin(), lengths.end());
    if (min_len == max_len) throw InputError("length_slope: all word lengths equal");

    const double n = static_cast<double>(lengths.size());
    const double mean_x = std::accumulate(lengths.begin(), lengths.end(), 0.0) / n;
    const double mean_y = std::accumulate(bits.begin(), bits.end(), 0.0) / n;
    double sxx = 0.0;
    for (double x : lengths) sxx += (x - mean_x) * (x - mean_x);
    auto slope_of = [&](const std::vector<double>& ys) {
        double sxy = 0.0;
        for (std::size_t i = 0; i < ys.size(); ++i) sxy += (lengths[i] - mean_x) * (ys[i] - mean_y);
        return sxy / sxx;
    };
    const double observed = slope_of(bits);

    Rng rng(seed);
    std::vector<double> shuffled = bits;
    std::size_t k = 0;
    const double threshold = std::fabs(observed) - 1e-15;
    for (std::size_t p = 0; p < n_permutations; ++p) {
        rng.shuffle(shuffled);
        if (std::fabs(slope_of(shuffled)) >= threshold) ++k;
    }

    SlopeResult r;
    r.slope = observed;
    r.p_value = static_cast<double>(k + 1) / static_cast<double>(n_permutations + 1);
    r.restriction = restriction;
    r.n_pairs = lengths.size();
    return r;
}

KLProfile positional_kl(const PositionalUnigramModel& positional, const UnigramModel& global,
                        double min_coverage) {
    const std::vector<double> q = global.distribution();
    KLProfile profile;
    double best = -1.0;
    for (std::size_t t = 1; t <= positional.max_position(); ++t) {
        const double cov = positional.coverage(t);
        if (cov < min_coverage) continue;
        const std::vector<double> p = positional.distribution(t);
        if (p.size() != q.size())
            throw InputError("positional_kl: positional and global models disagree on alphabet");
        const double kl = kl_bits(p, q);
        profile.positions.push_back(static_cast<int>(t));
        profile.kl_bits.push_back(kl);
        profile.coverage.push_back(cov);
        if (kl > best) {
            best = kl;
            profile.argmax_position = static_cast<int>(t);
        }
    }
    if (profile.positions.empty())
        throw InputError("positional_kl: no position reaches the coverage threshold");
    return profile;
}

std::vector<CurvePoint> positional_mean_curve(const std::vector<SurprisalRecord>& records) {
    std::map<int, std::pair<double, std::size_t>> acc;
    for (const SurprisalRecord& r : records) {
        auto& [sum, count] = acc[r.position];
        sum += r.bits;
        ++count;
    }
    std::vector<CurvePoint> curve;
    curve.reserve(acc.size());
    for (const auto& [pos, sc] : acc)
        curve.push_back({pos, sc.first / static_cast<double>(sc.second), sc.second});
    return curve;
}

std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
    std::string out = "position,mean_bits,count\n";
    char buf[64];
    for (const CurvePoint& p : curve) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%zu\n", p.position, p.mean_bits, p.count);
        out += buf;
    }
    return out;
}

std::vector<AblationRow> eow_ablation_report(const std::vector<SurprisalRecord>& with_terminals,
                                             const std::vector<SurprisalRecord>& without_terminals) {
    auto split_by_measure = [](const std::vector<SurprisalRecord>& records) {
        std::map<MeasureKind, std::vector<SurprisalRecord>> by;
        for (const SurprisalRecord& r : records) by[r.measure].push_back(r);
        return by;
    };
    auto with_by = split_by_measure(with_terminals);
    auto without_by = split_by_measure(without_terminals);

    std::vector<AblationRow> rows;
    for (auto& [measure, recs_without] : without_by) {
        auto it = with_by.find(measure);
        AblationRow row;
        row.measure = measure_name(measure);

        const BinningResult binned_without = bin_initial_final(recs_without);
        if (binned_without.words.empty())
            throw InputError("eow_ablation_report: no binnable words for measure " + row.measure);
        row.initial_without = binned_without.pooled_initial_mean;
        row.final_without = binned_without.pooled_final_mean;
        row.diff_pct_without = diff_pct(row.initial_without, row.final_without);

        const bool directional =
            measure == MeasureKind::Forward || measure == MeasureKind::Backward;
        if (directional) {
            if (it == with_by.end())
                throw InputError("eow_ablation_report: missing terminal-including records for " +
                                 row.measure);
            // Same split check: same language tag and word coverage.
            std::set<int> words_with, words_without;
            std::string lang_with, lang_without;
            for (const SurprisalRecord& r : it->second) {
                words_with.insert(r.word_id);
                lang_with = r.language;
            }
            for (const SurprisalRecord& r : recs_without) {
                words_without.insert(r.word_id);
                lang_without = r.language;
            }
            if (lang_with != lang_without || words_with != words_without)
                throw InputError("eow_ablation_report: record sets come from different splits");

            const BinningResult binned_with = bin_initial_final(it->second);
            row.initial_with = binned_with.pooled_initial_mean;
            row.final_with = binned_with.pooled_final_mean;
            row.diff_pct_with = diff_pct(*row.initial_with, *row.final_with);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string ablation_to_csv(const std::vector<AblationRow>& rows) {
    std::string out =
        "measure,initial_eow,final_eow,diff_pct_eow,initial_no_eow,final_no_eow,diff_pct_no_eow\n";
    char buf[160];
    for (const AblationRow& r : rows) {
        std::string with_cols = ",,";
        if (r.initial_with) {
            std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.2f", *r.initial_with, *r.final_with,
                          *r.diff_pct_with);
            with_cols = buf;
        }
        std::snprintf(buf, sizeof(buf), "%s,%s,%.6f,%.6f,%.2f\n", r.measure.c_str(),
                      with_cols.c_str(), r.initial_without, r.final_without, r.diff_pct_without);
        out += buf;
    }
    return out;
}

}  // namespace lexinfo
