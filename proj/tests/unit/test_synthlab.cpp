#include <doctest.h>

#include <cmath>
#include <set>

#include "lexinfo/errors.hpp"
#include "lexinfo/numerics.hpp"
#include "lexinfo/synthlab.hpp"

using namespace lexinfo;

TEST_CASE("iid-uniform generator echoes its spec") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::IidUniform;
    spec.sigma = 4;
    spec.min_length = spec.max_length = 6;
    spec.n = 500;
    spec.seed = 9;
    const Lexicon lex = generate(spec);
    CHECK(lex.alphabet.surface_count() == 4);
    CHECK(lex.size() > 450);  // a few duplicates may collapse
    for (const Word& w : lex.words) {
        CHECK(w.length() == 6);
        for (int id : w.segment_ids) CHECK(id < 4);
    }
    // Determinism per seed.
    const Lexicon again = generate(spec);
    REQUIRE(again.size() == lex.size());
    for (std::size_t i = 0; i < lex.size(); ++i)
        CHECK(again.words[i].segment_ids == lex.words[i].segment_ids);
}

TEST_CASE("doubled-half words are a half followed by its copy") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::DoubledHalf;
    spec.sigma = 5;
    spec.min_length = 2;
    spec.max_length = 4;
    spec.n = 300;
    spec.seed = 10;
    const Lexicon lex = generate(spec);
    for (const Word& w : lex.words) {
        REQUIRE(w.length() % 2 == 0);
        const std::size_t half = w.length() / 2;
        for (std::size_t i = 0; i < half; ++i)
            CHECK(w.segment_ids[i] == w.segment_ids[half + i]);
    }
    // The canonical example: half "foo" doubles to "foofoo".
    GeneratorSpec one;
    one.kind = GeneratorSpec::Kind::DoubledHalf;
    one.sigma = 26;
    one.min_length = one.max_length = 3;
    one.n = 1;
    one.seed = 4;
    const Lexicon single = generate(one);
    const std::string text = single.render(single.words[0]);
    CHECK(text.substr(0, 3) == text.substr(3, 3));
}

TEST_CASE("harmony words are CV syllables that never mix vowel classes") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::VowelHarmony;
    spec.n = 400;
    spec.seed = 11;
    const Lexicon lex = generate(spec);
    const std::set<std::string> cons = {"p", "t", "k", "s"};
    const std::set<std::string> back_class = {"a", "o"}, front_class = {"e", "i"};
    for (const Word& w : lex.words) {
        REQUIRE(w.length() % 2 == 0);
        const std::size_t syllables = w.length() / 2;
        CHECK(syllables >= 2);
        CHECK(syllables <= 4);
        bool any_back = false, any_front = false;
        for (std::size_t i = 0; i < w.length(); ++i) {
            const std::string s = lex.alphabet.symbol(w.segment_ids[i]);
            if (i % 2 == 0) {
                CHECK(cons.count(s) == 1);
            } else {
                if (back_class.count(s)) any_back = true;
                if (front_class.count(s)) any_front = true;
            }
        }
        CHECK(!(any_back && any_front));  // harmony: one class per word
    }
}

TEST_CASE("harmony generator with distinct initial consonants") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::VowelHarmony;
    spec.distinct_initial_consonant = true;
    spec.n = 200;
    spec.seed = 12;
    const Lexicon lex = generate(spec);
    const std::set<std::string> initial_only = {"m", "n"};
    for (const Word& w : lex.words) {
        CHECK(initial_only.count(lex.alphabet.symbol(w.segment_ids[0])) == 1);
        for (std::size_t i = 1; i < w.length(); ++i)
            CHECK(initial_only.count(lex.alphabet.symbol(w.segment_ids[i])) == 0);
    }
}

TEST_CASE("generator input validation") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::IidUniform;
    spec.sigma = 1;  // too small
    CHECK_THROWS_AS(generate(spec), InputError);
    spec.sigma = 4;
    spec.n = 0;
    CHECK_THROWS_AS(generate(spec), InputError);
}

TEST_CASE("analytic bias formula evaluates Eq-6 style values") {
    CHECK(analytic_bias_bits(4, 1, 1024) == doctest::Approx(3.0 * kLog2E / 1024.0));
    CHECK(analytic_bias_bits(4, 1, 1024) == doctest::Approx(0.00423).epsilon(0.01));
    CHECK(analytic_bias_bits(4, 3, 1024) == doctest::Approx(16.0 * 3.0 * kLog2E / 1024.0));
    CHECK(analytic_bias_bits(4, 3, 1024) == doctest::Approx(0.0676).epsilon(0.01));
    CHECK(analytic_bias_bits(8, 2, 1000000000) < 1e-7);  // vanishes as N grows
}

TEST_CASE("bias experiment: plug-in estimates sink below the constant truth") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::IidUniform;
    spec.sigma = 8;
    spec.min_length = spec.max_length = 6;
    spec.n = 2000;
    spec.seed = 13;
    const BiasReport r = bias_experiment_mean(spec, 5, 5);
    REQUIRE(r.depth.size() == 5);
    for (double t : r.true_bits) CHECK(t == doctest::Approx(3.0));
    // Strictly decreasing for t >= 2 (the reductio shape).
    for (std::size_t i = 1; i + 1 < r.depth.size(); ++i)
        CHECK(r.plugin_bits[i] > r.plugin_bits[i + 1]);
    // Estimates never exceed the truth by more than noise.
    for (double p : r.plugin_bits) CHECK(p <= 3.0 + 1e-9);

    GeneratorSpec bad = spec;
    bad.kind = GeneratorSpec::Kind::DoubledHalf;
    CHECK_THROWS_AS(bias_experiment(bad, 4), InputError);
}

TEST_CASE("bias report CSV has the pinned columns") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::IidUniform;
    spec.sigma = 4;
    spec.min_length = spec.max_length = 4;
    spec.n = 500;
    spec.seed = 14;
    const std::string csv = bias_report_to_csv(bias_experiment(spec, 4));
    CHECK(csv.rfind("depth,true_bits,plugin_bits,analytic_bias_bits,prefix_count\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 depths
}

TEST_CASE("mi symmetry: both routes agree to rounding") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::IidUniform;
    spec.sigma = 6;
    spec.min_length = spec.max_length = 5;
    spec.n = 12000;
    spec.seed = 15;
    const Lexicon lex = generate(spec);
    const MiSymmetry mi = mi_symmetry_check(lex, 3);
    CHECK(mi.joint_observations >= 1000);
    CHECK(mi.forward_bits == doctest::Approx(mi.backward_bits).epsilon(1e-9));
}

TEST_CASE("mi symmetry: independent iid positions carry almost no MI") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::IidUniform;
    spec.sigma = 8;
    spec.min_length = spec.max_length = 6;
    spec.n = 10000;
    spec.seed = 16;
    const Lexicon lex = generate(spec);
    const MiSymmetry mi = mi_symmetry_check(lex, 4);
    CHECK(std::fabs(mi.forward_bits) < 0.02);
}

TEST_CASE("mi symmetry: copy dependency across the doubled-half boundary") {
    // Half length 1: W_2 is a literal copy of W_1, so I(W_2; W_1) = H(W_1).
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::DoubledHalf;
    spec.sigma = 8;
    spec.min_length = spec.max_length = 1;
    spec.n = 5000;
    spec.seed = 17;
    const Lexicon lex = generate(spec);  // types: aa, bb, ..., one per symbol
    const MiSymmetry mi = mi_symmetry_check(lex, 2, /*min_observations=*/4);
    const double h_first = std::log2(8.0);
    CHECK(std::fabs(mi.forward_bits - h_first) <= 0.05);
}

TEST_CASE("mi symmetry refuses thin data") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::IidUniform;
    spec.sigma = 4;
    spec.min_length = spec.max_length = 3;
    spec.n = 50;
    spec.seed = 18;
    const Lexicon lex = generate(spec);
    CHECK_THROWS_AS(mi_symmetry_check(lex, 2), InputError);
}
