#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "taukappa/tau_engine.hpp"
#include "taukappa/verification.hpp"

using namespace taukappa;

TEST_CASE("rational basics") {
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(-2, 4).str() == "-1/2");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(7).str() == "7");
    CHECK(Rational::from_string("-35/96") == Rational(-35, 96));
    CHECK(Rational::from_string("12") == Rational(12));
    CHECK_THROWS_AS(Rational::from_string("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(odd_double_factorial(-1) == 1);
    CHECK(odd_double_factorial(7) == 105);
    CHECK(factorial(6) == 720);
}

TEST_CASE("golden bracket values") {
    TauEngine engine;
    CHECK(engine.tau(0, {0, 0, 0}) == Rational(1));
    CHECK(engine.tau(1, {1}) == Rational(1, 24));
    CHECK(engine.tau(0, {1, 0, 0}) == Rational(0));
    CHECK(engine.tau(0, {0, 0, 0, 1}) == Rational(1));
    CHECK(engine.tau(2, {4}) == Rational(1, 1152));
    CHECK(engine.tau(0, {0, 0}) == Rational(0));  // unstable
    CHECK(engine.tau(1, {0}) == Rational(0));     // dimension fails
}

TEST_CASE("tau_auto infers the genus") {
    TauEngine engine;
    CHECK(engine.tau_auto({0, 0, 0}) == Rational(1));
    CHECK(engine.tau_auto({0, 0}) == Rational(0));  // genus 1/3
    CHECK(engine.tau_auto({4}) == Rational(1, 1152));
    CHECK(engine.tau_auto({7}) == phi(3));
}

TEST_CASE("phi recursion and engine consistency") {
    CHECK(phi(0) == Rational(1));
    CHECK(phi(1) == Rational(1, 24));
    CHECK(phi(2) == Rational(1, 1152));
    CHECK(phi(3) == Rational(1, 82944));
    TauEngine engine;
    for (int g = 1; g <= 5; ++g) CHECK(engine.tau(g, {3 * g - 2}) == phi(g));
    CHECK(engine.tau(2, {2, 3}) == Rational(29, 5760));
}

TEST_CASE("genus-0 string oracle") {
    TauEngine engine;
    CHECK(genus0_oracle({0, 0, 0}) == Rational(1));
    CHECK(genus0_oracle({0, 0, 0, 1}) == engine.tau_auto({0, 0, 0, 1}));
    CHECK(genus0_oracle({0, 0, 2}) == Rational(0));
    CHECK_THROWS_AS(genus0_oracle({4}), std::invalid_argument);
    for (int n = 3; n <= 8; ++n)
        for (const auto& d : descending_multisets(n, n - 3L)) CHECK(engine.tau_auto(d) == genus0_oracle(d));
}

TEST_CASE("string and dilaton identities") {
    TauEngine engine;
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 6; ++n) {
            if (2 * g - 2 + n <= 0) continue;
            for (const auto& d : descending_multisets(n, 3L * g - 3 + n)) {
                std::vector<int> with0 = d;
                with0.push_back(0);
                Rational rhs;
                for (std::size_t j = 0; j < d.size(); ++j) {
                    if (d[j] == 0) continue;
                    std::vector<int> lowered = d;
                    --lowered[j];
                    rhs += engine.tau(g, lowered);
                }
                CHECK(engine.tau(g, with0) == rhs);
                std::vector<int> with1 = d;
                with1.push_back(1);
                CHECK(engine.tau(g, with1) == Rational(2L * g - 2 + n) * engine.tau(g, d));
            }
        }
}

TEST_CASE("dimension gate and permutation invariance") {
    TauEngine engine;
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<int> genus_dist(0, 3), size_dist(1, 6), entry_dist(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        int g = genus_dist(rng);
        int n = size_dist(rng);
        std::vector<int> d(n);
        for (int& x : d) x = entry_dist(rng);
        long deg = 0;
        for (int x : d) deg += x;
        if (deg != 3L * g - 3 + n) CHECK(engine.tau(g, d) == Rational(0));
        std::vector<int> shuffled = d;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(engine.tau(g, d) == engine.tau(g, shuffled));
    }
}

TEST_CASE("memo integrity: cold and warm caches agree") {
    TauEngine cold;
    const Rational value = cold.tau(2, {2, 2, 2, 1});
    CHECK(value == Rational(7, 48));
    CHECK(cold.tau(2, {2, 2, 2, 1}) == value);  // warm hit
    CHECK(cold.memo().size() > 1);

    std::ostringstream saved;
    cold.memo().save(saved);
    TauEngine warm;
    std::istringstream loading(saved.str());
    warm.memo().load(loading);
    CHECK(warm.tau(2, {2, 2, 2, 1}) == value);

    TauEngine fresh;
    CHECK(fresh.tau(2, {1, 2, 2, 2}) == value);
    CHECK(fresh.tau(2, {2, 2, 2}) == Rational(7, 240));
}

TEST_CASE("memo conflicts are fatal") {
    MemoTable table;
    TauBracket key = TauBracket::canonical(1, {1});
    table.insert(key, Rational(1, 24));
    table.insert(key, Rational(1, 24));  // idempotent
    CHECK_THROWS_AS(table.insert(key, Rational(1, 25)), MemoConflictError);
}

TEST_CASE("cache file format") {
    TauEngine engine;
    engine.tau(1, {1});
    engine.tau(0, {0, 0, 0, 1});
    std::ostringstream os;
    engine.memo().save(os);
    const std::string text = os.str();
    CHECK(text.rfind("taukappa-cache v1\n", 0) == 0);
    CHECK(text.find("1;1;1/24\n") != std::string::npos);

    MemoTable reloaded;
    std::istringstream is(text);
    reloaded.load(is);
    CHECK(reloaded.size() == engine.memo().size());

    std::istringstream bad_header("nonsense\n1;1;1/24\n");
    MemoTable t2;
    CHECK_THROWS_AS(t2.load(bad_header), std::runtime_error);

    std::istringstream conflict("taukappa-cache v1\n1;1;1/25\n");
    CHECK_THROWS_AS(engine.memo().load(conflict), MemoConflictError);

    std::istringstream unsorted("taukappa-cache v1\n0;0,1;0\n");
    MemoTable t3;
    CHECK_THROWS_AS(t3.load(unsorted), std::runtime_error);
}
