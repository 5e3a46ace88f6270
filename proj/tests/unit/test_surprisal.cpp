#include <doctest.h>

#include <cmath>
#include <set>

#include "lexinfo/errors.hpp"
#include "lexinfo/rng.hpp"
#include "lexinfo/surprisal.hpp"

using namespace lexinfo;

namespace {

// Zero-parameter recurrent model: every distribution is uniform.
RecurrentLM uniform_model(Direction dir, int surface) {
    RecurrentConfig cfg;
    cfg.embed_dim = 4;
    cfg.hidden = 6;
    cfg.layers = 1;
    cfg.dropout = 0.0;
    return RecurrentLM(dir, surface, cfg);
}

Lexicon toy(const std::string& words) {
    return parse_wordlist(words, SegmentMode::Graphemes, "toy");
}

}  // namespace

TEST_CASE("uniform forward model, |sigma|=3, word 'ab', terminals included") {
    const Lexicon lex = toy("ab\n");
    REQUIRE(lex.alphabet.surface_count() == 2);  // sigma = 3 incl. EOW
    const RecurrentLM model = uniform_model(Direction::Forward, 2);

    const SurprisalResult r =
        compute_surprisals(model, lex, MeasureKind::Forward, EowPolicy{true});
    REQUIRE(r.records.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(r.records[i].position == i + 1);
        CHECK(r.records[i].bits == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    }
    CHECK(r.records[2].segment == kEowSegment);
    CHECK(r.records[0].segment == "a");
}

TEST_CASE("terminals excluded drops the EOW record") {
    const Lexicon lex = toy("ab\n");
    const RecurrentLM model = uniform_model(Direction::Forward, 2);
    const SurprisalResult r =
        compute_surprisals(model, lex, MeasureKind::Forward, EowPolicy{false});
    REQUIRE(r.records.size() == 2);
    CHECK(r.records[0].position == 1);
    CHECK(r.records[1].position == 2);
    for (const auto& rec : r.records) CHECK(!rec.is_terminal());
}

TEST_CASE("backward records run positions L..1 plus the BOW terminal at 0") {
    const Lexicon lex = toy("abc\n");
    const RecurrentLM model = uniform_model(Direction::Backward, lex.alphabet.surface_count());
    const SurprisalResult r =
        compute_surprisals(model, lex, MeasureKind::Backward, EowPolicy{true});
    REQUIRE(r.records.size() == 4);
    CHECK(r.records[0].position == 3);
    CHECK(r.records[1].position == 2);
    CHECK(r.records[2].position == 1);
    CHECK(r.records[3].position == 0);
    CHECK(r.records[3].segment == kBowSegment);

    const SurprisalResult no_term =
        compute_surprisals(model, lex, MeasureKind::Backward, EowPolicy{false});
    CHECK(no_term.records.size() == 3);
}

TEST_CASE("cloze measure yields exactly one record per position") {
    const Lexicon lex = toy("abcd\n");
    AttentionConfig cfg;
    cfg.embed_dim = 8;
    cfg.layers = 1;
    cfg.heads = 2;
    cfg.ff_dim = 8;
    MaskedAttentionLM model(AttentionVariant::Cloze, lex.alphabet.surface_count(), cfg);
    Rng rng(5);
    model.init_params(rng);

    const SurprisalResult r = compute_surprisals(model, lex, MeasureKind::Cloze, EowPolicy{true});
    REQUIRE(r.records.size() == 4);  // length-4 word, never terminals
    for (int i = 0; i < 4; ++i) CHECK(r.records[i].position == i + 1);
}

TEST_CASE("record counts match the policy arithmetic across random words") {
    Rng rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        std::string text;
        std::set<std::string> seen;
        while (seen.size() < 8) {
            std::string w;
            const std::size_t len = 1 + rng.below(6);
            for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('a' + rng.below(4));
            if (seen.insert(w).second) text += w + "\n";
        }
        const Lexicon lex = parse_wordlist(text, SegmentMode::Graphemes, "t");
        std::size_t total_len = 0;
        for (const Word& w : lex.words) total_len += w.length();

        const RecurrentLM fwd = uniform_model(Direction::Forward, lex.alphabet.surface_count());
        const RecurrentLM bwd = uniform_model(Direction::Backward, lex.alphabet.surface_count());
        CHECK(compute_surprisals(fwd, lex, MeasureKind::Forward, EowPolicy{true}).records.size() ==
              total_len + lex.size());
        CHECK(compute_surprisals(fwd, lex, MeasureKind::Forward, EowPolicy{false}).records.size() ==
              total_len);
        CHECK(compute_surprisals(bwd, lex, MeasureKind::Backward, EowPolicy{true}).records.size() ==
              total_len + lex.size());

        const UnigramModel uni = UnigramModel::fit(lex, true);
        CHECK(compute_surprisals(uni, lex, MeasureKind::Unigram, EowPolicy{true}).records.size() ==
              total_len);
    }
}

TEST_CASE("measure/model-family mismatch is an error") {
    const Lexicon lex = toy("ab\nba\n");
    const RecurrentLM fwd = uniform_model(Direction::Forward, lex.alphabet.surface_count());
    CHECK_THROWS_AS(compute_surprisals(fwd, lex, MeasureKind::Backward, EowPolicy{true}),
                    InputError);
    const UnigramModel uni = UnigramModel::fit(lex, true);
    CHECK_THROWS_AS(compute_surprisals(uni, lex, MeasureKind::Forward, EowPolicy{true}),
                    InputError);
}

TEST_CASE("trie surprisal works on its training set and refuses held-out data") {
    const Lexicon train = toy("ab\nac\n");
    const TrieModel trie = TrieModel::fit(train);

    const SurprisalResult r = compute_surprisals_trie(trie, train, EowPolicy{true});
    CHECK(r.records.size() == 6);  // 2 words x (2 segments + EOW)
    CHECK(r.quarantined == 0);
    // q(a|bow)=1 -> 0 bits; q(b|bow a)=1/2 -> 1 bit.
    CHECK(r.records[0].bits == doctest::Approx(0.0));
    CHECK(r.records[1].bits == doctest::Approx(1.0));

    const Lexicon other = toy("ad\nae\n");
    CHECK_THROWS_AS(compute_surprisals_trie(trie, other, EowPolicy{true}), InputError);
}

TEST_CASE("cross_entropy_estimate means and filters") {
    std::vector<SurprisalRecord> recs = {
        {"x", 0, 1, "a", MeasureKind::Forward, 1.0},
        {"x", 0, 2, "b", MeasureKind::Forward, 3.0},
    };
    CHECK(cross_entropy_estimate(recs, RecordFilter::All) == doctest::Approx(2.0));

    std::vector<SurprisalRecord> one = {{"x", 0, 1, "a", MeasureKind::Forward, 2.75}};
    CHECK(cross_entropy_estimate(one, RecordFilter::All) == doctest::Approx(2.75));

    recs.push_back({"x", 0, 3, kEowSegment, MeasureKind::Forward, 0.5});
    CHECK(cross_entropy_estimate(recs, RecordFilter::TerminalsOnly) == doctest::Approx(0.5));
    CHECK(cross_entropy_estimate(recs, RecordFilter::NonTerminalsOnly) == doctest::Approx(2.0));
    CHECK_THROWS_AS(cross_entropy_estimate(one, RecordFilter::TerminalsOnly), InputError);
}

TEST_CASE("records CSV round trip, including fields needing quotes") {
    std::vector<SurprisalRecord> recs = {
        {"en", 0, 1, "a", MeasureKind::Forward, 1.25},
        {"en", 0, 2, ",", MeasureKind::Forward, 0.125},
        {"qu\"oty", 1, 0, kBowSegment, MeasureKind::Backward, 3.5},
    };
    const std::string csv = records_to_csv(recs);
    CHECK(csv.rfind("language,word_id,position,segment,measure,surprisal_bits\n", 0) == 0);
    const auto back = records_from_csv(csv);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i].language == recs[i].language);
        CHECK(back[i].word_id == recs[i].word_id);
        CHECK(back[i].position == recs[i].position);
        CHECK(back[i].segment == recs[i].segment);
        CHECK(back[i].measure == recs[i].measure);
        CHECK(back[i].bits == doctest::Approx(recs[i].bits).epsilon(1e-9));
    }
}

TEST_CASE("uniform model records all equal log2 sigma") {
    const Lexicon lex = toy("abc\ncba\nbca\n");
    const double expect = std::log2(static_cast<double>(lex.alphabet.sigma_size()));
    const RecurrentLM model = uniform_model(Direction::Forward, lex.alphabet.surface_count());
    const SurprisalResult r =
        compute_surprisals(model, lex, MeasureKind::Forward, EowPolicy{true});
    for (const auto& rec : r.records) CHECK(rec.bits == doctest::Approx(expect).epsilon(1e-12));
}
