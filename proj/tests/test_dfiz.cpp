#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "taukappa/dfiz.hpp"
#include "taukappa/verification.hpp"

using namespace taukappa;

namespace {

const DfizIdentity& identity_for(const char* profile) {
    return DfizTable::builtin().require(ValenceProfile::parse(profile));
}

}  // namespace

TEST_CASE("table loads with the expected shape") {
    const DfizTable& table = DfizTable::builtin();
    CHECK(table.identities().size() == 11);
    CHECK(identity_for("2:1").terms.size() == 3);
    CHECK(identity_for("3:1").terms.size() == 4);
    CHECK(identity_for("2:3").terms.size() == 41);
    CHECK(table.find(ValenceProfile::parse("9:1")) == nullptr);
    CHECK_THROWS_AS(table.require(ValenceProfile::parse("9:1")), UnsupportedProfileError);
    CHECK_THROWS_AS(table.require(ValenceProfile::parse("1:2,2:1")), UnsupportedProfileError);
}

TEST_CASE("s2 identity content") {
    const DfizIdentity& s2 = identity_for("2:1");
    REQUIRE(s2.terms.size() == 3);
    CHECK(s2.terms[0].coefficient == Rational(12));
    CHECK(s2.terms[0].factors == std::vector<MultiIndex>{MultiIndex::of({{2, 1}})});
    CHECK(s2.terms[1].coefficient == Rational(-1, 2));
    CHECK(s2.terms[1].factors == std::vector<MultiIndex>{MultiIndex::of({{0, 2}})});
    CHECK(s2.terms[2].coefficient == Rational(-1, 2));
    CHECK(s2.terms[2].factors ==
          std::vector<MultiIndex>{MultiIndex::of({{0, 1}}), MultiIndex::of({{0, 1}})});
}

TEST_CASE("s3 carries the 5/4 dF/dt0 term") {
    const DfizIdentity& s3 = identity_for("3:1");
    bool found = false;
    for (const auto& term : s3.terms)
        if (term.factors == std::vector<MultiIndex>{MultiIndex::of({{0, 1}})})
            found = term.coefficient == Rational(5, 4);
    CHECK(found);
}

TEST_CASE("structural checks") {
    for (const auto& ident : DfizTable::builtin().identities()) CHECK(structural_check(ident));

    // top coefficient of s7 is 2^7 * 13!!
    const DfizIdentity& s7 = identity_for("7:1");
    CHECK(s7.terms[0].coefficient == Rational(mpz_class(128) * odd_double_factorial(13), mpz_class(1)));

    // a weight-3 term cannot enter a top-weight-10 identity
    DfizIdentity mutated = identity_for("2:2");
    mutated.terms.push_back(DerivativeTerm{Rational(1), {MultiIndex::of({{1, 1}})}});
    CHECK_FALSE(structural_check(mutated));

    // breaking the leading coefficient must be caught
    DfizIdentity wrong_top = identity_for("2:1");
    wrong_top.terms[0].coefficient = Rational(13);
    CHECK_FALSE(structural_check(wrong_top));

    // a second term of top weight must be caught
    DfizIdentity doubled_top = identity_for("2:1");
    doubled_top.terms.push_back(
        DerivativeTerm{Rational(1), {MultiIndex::of({{1, 1}}), MultiIndex::of({{0, 2}})}});
    CHECK_FALSE(structural_check(doubled_top));
}

TEST_CASE("table parser rejects malformed input") {
    std::istringstream missing_header("nu=2:1\n12;2:1\n");
    CHECK_THROWS_AS(DfizTable::load(missing_header), std::runtime_error);
    std::istringstream orphan_term("dfiz-table v1\n12;2:1\n");
    CHECK_THROWS_AS(DfizTable::load(orphan_term), std::runtime_error);
    std::istringstream ok("dfiz-table v1\nnu=2:1\n12;2:1\n-35/96;\n");
    DfizTable t = DfizTable::load(ok);
    REQUIRE(t.identities().size() == 1);
    CHECK(t.identities()[0].terms[1].factors.empty());
}

TEST_CASE("coefficient extraction reproduces the worked examples") {
    TauEngine engine;
    const DfizTable& table = DfizTable::builtin();
    CHECK(coefficient_rhs(engine, identity_for("2:1"), 4, {0, 0, 0, 0}) == Rational(9));
    CHECK(coefficient_rhs(engine, identity_for("2:1"), 1, {0}) == Rational(0));
    CHECK(coefficient_rhs(engine, identity_for("3:1"), 2, {0, 0}) == Rational(0));
    CHECK(coefficient_rhs(engine, identity_for("2:2"), 2, {0, 0}) == Rational(0));

    CHECK(w_integral(engine, table, ValenceProfile::parse("2:1"), 4, {0, 0, 0, 0}) == Rational(9));
    CHECK(w_integral(engine, table, ValenceProfile::parse("2:2"), 2, {0, 0}) == Rational(0));
    // v = m1 + m2 = 0 on (1,3) for the 9-valent profile
    CHECK(w_integral(engine, table, ValenceProfile::parse("4:1"), 3, {0, 0, 0}) == Rational(0));
    CHECK_THROWS_AS(w_integral(engine, table, ValenceProfile::parse("2:1"), 2, {1, 1}),
                    InadmissibleDegreeError);
}

TEST_CASE("w integral is symmetric in d") {
    TauEngine engine;
    const DfizTable& table = DfizTable::builtin();
    const auto profile = ValenceProfile::parse("2:1");
    std::vector<int> d = {2, 1, 0, 0};
    const Rational reference = w_integral(engine, table, profile, 4, d);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 8; ++trial) {
        std::shuffle(d.begin(), d.end(), rng);
        CHECK(w_integral(engine, table, profile, 4, d) == reference);
    }
}

TEST_CASE("derived m1") {
    const auto m2 = ValenceProfile::parse("2:1");
    for (int g = 0; g <= 3; ++g)
        for (int n = 1; n <= 5; ++n) CHECK(derived_m1(m2, g, n) == 4L * g - 7 + 2 * n);
    const auto m3 = ValenceProfile::parse("3:1");
    CHECK(derived_m1(m3, 2, 3) == 4L * 2 - 9 + 2 * 3);  // m1 = 4g-9+2n for the 7-valent profile
}

TEST_CASE("kappa parts match the codimension table") {
    const DfizTable& table = DfizTable::builtin();
    KappaPolynomial codim1 = kappa_part(table, ValenceProfile::parse("2:1"));
    CHECK(codim1.str() == "12*k1");
    CHECK(kappa_part(table, ValenceProfile::parse("2:2")).str() == "72*k1^2 - 348*k2");
    CHECK(kappa_part(table, ValenceProfile::parse("2:3")).str() == "288*k1^3 - 4176*k1*k2 + 20736*k3");
    CHECK(kappa_part(table, ValenceProfile::parse("7:1")).str() == "17297280*k6");
    // top-level coefficient law across all eleven profiles
    for (const auto& ident : table.identities()) {
        const auto profile = ValenceProfile::of({ident.nu.entries.begin(), ident.nu.entries.end()});
        KappaPolynomial part = kappa_part(table, profile);
        std::vector<int> top_indices;
        Rational expected(1);
        for (const auto& [i, m] : profile.entries) {
            for (int k = 0; k < m; ++k) top_indices.push_back(i - 1);
            const Rational base = Rational(mpz_class(1) << i, mpz_class(1)) *
                                  Rational(odd_double_factorial(2L * i - 1), mpz_class(1));
            for (int k = 0; k < m; ++k) expected *= base;
            expected /= Rational(factorial(m), mpz_class(1));
        }
        auto it = part.terms().find(KappaMonomial::of(top_indices));
        REQUIRE(it != part.terms().end());
        CHECK(it->second == expected);
    }
}

TEST_CASE("x class integrals") {
    TauEngine engine;
    CHECK(x_class_integral(engine, ValenceProfile::parse("2:1"), 0, 4, {0, 0, 0, 0}) == Rational(9));
    CHECK(x_class_integral(engine, ValenceProfile::parse("2:1"), 1, 1, {0}) == Rational(0));
    CHECK(x_class_integral(engine, ValenceProfile::parse("3:1"), 1, 2, {0, 0}) == Rational(0));
    CHECK(x_class_integral(engine, ValenceProfile::parse("2:2"), 1, 2, {0, 0}) == Rational(0));
    CHECK_THROWS_AS(x_class_integral(engine, ValenceProfile::parse("4:1"), 1, 3, {0, 0, 0}),
                    UnsupportedProfileError);
}

TEST_CASE("cross-path equivalence spot checks") {
    TauEngine engine;
    const DfizTable& table = DfizTable::builtin();
    struct Case {
        const char* profile;
        int g, n;
    };
    for (const Case& c : {Case{"2:1", 1, 3}, Case{"3:1", 0, 5}, Case{"2:2", 0, 5}}) {
        const auto profile = ValenceProfile::parse(c.profile);
        const long total = 3L * c.g - 3 + c.n - profile.codim();
        for (const auto& d : descending_multisets(c.n, total))
            CHECK(w_integral(engine, table, profile, c.n, d) ==
                  x_class_integral(engine, profile, c.g, c.n, d));
    }
}

TEST_CASE("empty-cycle vanishing across all profiles") {
    TauEngine engine;
    const DfizTable& table = DfizTable::builtin();
    for (const auto& ident : table.identities()) {
        const auto profile = ValenceProfile::of({ident.nu.entries.begin(), ident.nu.entries.end()});
        const int k = profile.codim();
        for (int g = 0; g <= 3; ++g)
            for (int n = 1; n <= 4; ++n) {
                if (2 * (2L * g - 2 + n) - 2L * k > 0) continue;  // some vertices remain
                const long total = 3L * g - 3 + n - k;
                for (const auto& d : descending_multisets(n, total))
                    CHECK(w_integral(engine, table, profile, n, d) == Rational(0));
            }
    }
}

TEST_CASE("valence profile parsing") {
    CHECK(ValenceProfile::parse("2:1,3:1").str() == "2:1,3:1");
    CHECK(ValenceProfile::parse("3:1,2:1").str() == "2:1,3:1");
    CHECK(ValenceProfile::parse("2:1").codim() == 1);
    CHECK(ValenceProfile::parse("2:1,4:1").codim() == 4);
    CHECK_THROWS_AS(ValenceProfile::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(ValenceProfile::parse("2"), std::invalid_argument);
    CHECK_THROWS_AS(ValenceProfile::parse("0:1"), std::invalid_argument);
}
