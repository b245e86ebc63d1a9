#include "taukappa/verification.hpp"

#include <functional>
#include <sstream>

#include "taukappa/dfiz.hpp"
#include "taukappa/dual_graph.hpp"
#include "taukappa/kappa.hpp"
#include "taukappa/lemma2.hpp"
#include "taukappa/rational.hpp"
#include "taukappa/ribbon.hpp"
#include "taukappa/tau_engine.hpp"

namespace taukappa {

std::vector<std::vector<int>> descending_multisets(int size, long total) {
    std::vector<std::vector<int>> out;
    if (size <= 0 || total < 0) return out;
    std::vector<int> current;
    std::function<void(int, long, int)> rec = [&](int slots, long remaining, int cap) {
        if (slots == 0) {
            if (remaining == 0) out.push_back(current);
            return;
        }
        int hi = static_cast<int>(std::min<long>(cap, remaining));
        for (int v = hi; v >= 0; --v) {
            if (static_cast<long>(v) * slots < remaining) break;  // can't reach the total any more
            current.push_back(v);
            rec(slots - 1, remaining - v, v);
            current.pop_back();
        }
    };
    rec(size, total, static_cast<int>(total));
    return out;
}

namespace {

class Reporter {
public:
    explicit Reporter(std::vector<CheckResult>& out) : out_(out) {}

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        out_.push_back(CheckResult{name, pass, pass ? "" : detail});
    }

    // One criterion built from many sub-conditions; collects the first failure.
    class Scope {
    public:
        Scope(Reporter& reporter, std::string name) : reporter_(reporter), name_(std::move(name)) {}
        ~Scope() { reporter_.check(name_, pass_, detail_); }
        void require(bool condition, const std::string& what) {
            if (!condition && pass_) {
                pass_ = false;
                detail_ = what;
            }
        }

    private:
        Reporter& reporter_;
        std::string name_;
        bool pass_ = true;
        std::string detail_;
    };

private:
    std::vector<CheckResult>& out_;
};

std::string vec_str(const std::vector<int>& d) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    os << ']';
    return os.str();
}

void criterion1_golden(TauEngine& engine, Reporter& report) {
    Reporter::Scope s(report, "1 exact golden values");
    s.require(engine.tau(0, {0, 0, 0}) == Rational(1), "tau(0,[0,0,0]) != 1");
    s.require(engine.tau(1, {1}) == Rational(1, 24), "tau(1,[1]) != 1/24");
    s.require(phi(2) == Rational(1, 1152), "phi(2) != 1/1152");
    s.require(phi(3) == Rational(1, 82944), "phi(3) != 1/82944");
    s.require(engine.tau(2, {4}) == phi(2), "tau(2,[4]) != phi(2)");
    s.require(engine.tau(3, {7}) == phi(3), "tau(3,[7]) != phi(3)");
}

void criterion2_kappa(TauEngine& engine, Reporter& report) {
    Reporter::Scope s(report, "2 Mbar_{1,2} kappa integrals");
    s.require(mixed_integral(engine, 1, {0, 0}, KappaMonomial::of({2})) == Rational(1, 24),
              "int kappa_2 != 1/24");
    s.require(mixed_integral(engine, 1, {0, 0}, KappaMonomial::of({1, 1})) == Rational(1, 8),
              "int kappa_1^2 != 1/8");
}

void criterion3_m04(TauEngine& engine, const DfizTable& table, Reporter& report) {
    Reporter::Scope s(report, "3 Mbar_{0,4} triple agreement");
    const auto profile = ValenceProfile::parse("2:1");
    const std::vector<int> d(4, 0);
    s.require(w_integral(engine, table, profile, 4, d) == Rational(9), "w integral != 9");
    s.require(x_class_integral(engine, profile, 0, 4, d) == Rational(9), "x class integral != 9");
    s.require(count_w04({Rational(1), Rational(10), Rational(100), Rational(1000)}) == 9,
              "perimeter point count != 9");
    s.require(delta_integral(engine, 0, 4, d) == Rational(3), "deg delta != 3");
    Rational psi_total;
    for (int i = 0; i < 4; ++i) {
        std::vector<int> e(4, 0);
        e[i] = 1;
        psi_total += engine.tau(0, e);
    }
    s.require(psi_total == Rational(4), "deg psi != 4");
}

void criterion4_m11(TauEngine& engine, const DfizTable& table, Reporter& report) {
    Reporter::Scope s(report, "4 Mbar_{1,1} vanishing");
    const auto profile = ValenceProfile::parse("2:1");
    s.require(x_class_integral(engine, profile, 1, 1, {0}).is_zero(), "x class integral != 0");
    s.require(w_integral(engine, table, profile, 1, {0}).is_zero(), "w integral != 0");
}

void criterion5_m12(TauEngine& engine, const DfizTable& table, Reporter& report) {
    Reporter::Scope s(report, "5 Mbar_{1,2} codim-2 vanishing");
    const std::vector<int> d = {0, 0};
    for (const char* spec : {"3:1", "2:2"}) {
        const auto profile = ValenceProfile::parse(spec);
        s.require(x_class_integral(engine, profile, 1, 2, d).is_zero(),
                  std::string("x class integral != 0 for ") + spec);
        s.require(w_integral(engine, table, profile, 2, d).is_zero(),
                  std::string("w integral != 0 for ") + spec);
    }
}

void criterion6_kappa_table(const DfizTable& table, Reporter& report) {
    Reporter::Scope s(report, "6 kappa-part table");
    struct Row {
        const char* profile;
        std::vector<std::pair<std::vector<int>, long>> terms;  // (indices, coefficient)
    };
    const Row rows[] = {
        {"2:1", {{{1}, 12}}},
        {"3:1", {{{2}, 120}}},
        {"2:2", {{{1, 1}, 72}, {{2}, -348}}},
        {"4:1", {{{3}, 1680}}},
        {"2:1,3:1", {{{2, 1}, 1440}, {{3}, -13680}}},
        {"2:3", {{{1, 1, 1}, 288}, {{2, 1}, -4176}, {{3}, 20736}}},
        {"5:1", {{{4}, 30240}}},
        {"2:1,4:1", {{{3, 1}, 20160}, {{4}, -312480}}},
        {"3:2", {{{2, 2}, 7200}, {{4}, -159120}}},
        {"6:1", {{{5}, 665280}}},
        {"7:1", {{{6}, 17297280}}},
    };
    for (const Row& row : rows) {
        KappaPolynomial expected;
        for (const auto& [indices, coef] : row.terms)
            expected.add(KappaMonomial::of(indices), Rational(coef));
        KappaPolynomial got = kappa_part(table, ValenceProfile::parse(row.profile));
        s.require(got == expected, std::string("row ") + row.profile + ": got " + got.str());
    }
}

void criterion7_structure(const DfizTable& table, Reporter& report) {
    Reporter::Scope s(report, "7 weight structure of the table");
    s.require(table.identities().size() == 11, "table does not hold eleven identities");
    for (const auto& ident : table.identities()) {
        std::ostringstream name;
        name << "nu weight " << ident.top_weight();
        s.require(structural_check(ident), "structural check fails at " + name.str());
    }
}

void criterion8_determinants(Reporter& report) {
    Reporter::Scope s(report, "8 degree-two system determinants");
    for (int r = -2; r <= 30; r += 2)
        for (int n = 2; n <= 10; ++n)
            s.require(determinant3(eq_system(r, n)) == lemma2_determinant_formula(r, n),
                      "determinant mismatch at r=" + std::to_string(r) + ", n=" + std::to_string(n));
    for (int n = 2; n <= 10; ++n)
        s.require(g2_reduced_determinant(n) == Rational(1536, 5) * Rational(static_cast<long>(n) + 2),
                  "g=2 reduced determinant mismatch at n=" + std::to_string(n));
}

void criterion9_cross_path(TauEngine& engine, const DfizTable& table, Reporter& report) {
    Reporter::Scope s(report, "9 cross-path equivalence sweep");
    struct Case {
        const char* profile;
        std::vector<std::pair<int, int>> spaces;
    };
    const Case cases[] = {
        {"2:1", {{0, 4}, {0, 5}, {1, 2}, {1, 3}}},
        {"3:1", {{1, 2}, {0, 4}, {0, 5}}},
        {"2:2", {{1, 2}, {0, 4}, {0, 5}}},
    };
    for (const Case& c : cases) {
        const auto profile = ValenceProfile::parse(c.profile);
        for (const auto& [g, n] : c.spaces) {
            const long total = 3L * g - 3 + n - profile.codim();
            for (const auto& d : descending_multisets(n, total)) {
                const Rational w = w_integral(engine, table, profile, n, d);
                const Rational x = x_class_integral(engine, profile, g, n, d);
                s.require(w == x, std::string(c.profile) + " at (" + std::to_string(g) + "," + std::to_string(n) +
                                      "), d=" + vec_str(d) + ": w=" + w.str() + " x=" + x.str());
            }
        }
    }
}

void criterion10_oracles(TauEngine& engine, Reporter& report) {
    Reporter::Scope s(report, "10 oracle, string and dilaton sweeps");
    for (int n = 3; n <= 8; ++n)
        for (const auto& d : descending_multisets(n, n - 3L))
            s.require(engine.tau_auto(d) == genus0_oracle(d),
                      "genus-0 oracle mismatch at d=" + vec_str(d));
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 6; ++n) {
            if (2 * g - 2 + n <= 0) continue;
            for (const auto& d : descending_multisets(n, 3L * g - 3 + n)) {
                std::vector<int> with0 = d;
                with0.push_back(0);
                Rational string_rhs;
                for (std::size_t j = 0; j < d.size(); ++j) {
                    if (d[j] == 0) continue;
                    std::vector<int> lowered = d;
                    --lowered[j];
                    string_rhs += engine.tau(g, lowered);
                }
                s.require(engine.tau(g, with0) == string_rhs, "string equation fails at g=" + std::to_string(g) +
                                                                  ", d=" + vec_str(d));
                std::vector<int> with1 = d;
                with1.push_back(1);
                s.require(engine.tau(g, with1) == Rational(2L * g - 2 + n) * engine.tau(g, d),
                          "dilaton equation fails at g=" + std::to_string(g) + ", d=" + vec_str(d));
            }
        }
}

void criterion11_vanishing(TauEngine& engine, Reporter& report) {
    Reporter::Scope s(report, "11 boundary-pairing vanishing gates");
    for (int g = 0; g <= 3; ++g)
        for (int n = 2; n <= 4; ++n) {
            // monomials pairing against a genus-0 piece
            for (int j = 2; j <= n; ++j) {
                std::vector<int> beta;
                try {
                    beta = beta_exponents(g, n, 0, j);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                for (int p = 0; 2 * p <= g; ++p)
                    for (int h = 0; h <= n; ++h) {
                        if (2 * p == g && 2 * h > n) continue;  // canonical (p,h) only
                        if (!(p > 0 || h > j)) continue;
                        s.require(delta_ph_integral(engine, g, n, p, h, beta).is_zero(),
                                  "q=0 vanishing gate fails at g=" + std::to_string(g) + ",n=" + std::to_string(n) +
                                      ",p=" + std::to_string(p) + ",h=" + std::to_string(h) +
                                      ",j=" + std::to_string(j));
                    }
                if (1 < j && j < n)
                    s.require(delta_ph_integral(engine, g, n, 0, j, beta).sign() > 0,
                              "q=0 diagonal pairing not positive at g=" + std::to_string(g) + ",n=" + std::to_string(n) +
                                  ",j=" + std::to_string(j));
            }
            // monomials pairing against a positive-genus piece
            for (int q = 1; q <= g; ++q)
                for (int j = 1; j < n; ++j) {
                    std::vector<int> beta;
                    try {
                        beta = beta_exponents(g, n, q, j);
                    } catch (const std::invalid_argument&) {
                        continue;
                    }
                    for (int p = 0; 2 * p <= g; ++p)
                        for (int h = 0; h <= n; ++h) {
                            if (2 * p == g && 2 * h > n) continue;
                            if (!(p > q || h > j + 3 * (q - p))) continue;
                            s.require(delta_ph_integral(engine, g, n, p, h, beta).is_zero(),
                                      "q>0 vanishing gate fails at g=" + std::to_string(g) + ",n=" + std::to_string(n) +
                                          ",p=" + std::to_string(p) + ",h=" + std::to_string(h) +
                                          ",q=" + std::to_string(q) + ",j=" + std::to_string(j));
                        }
                    if (2 * q <= g && j >= 1 && j <= n - 1)
                        s.require(delta_ph_integral(engine, g, n, q, j, beta).sign() > 0,
                                  "q>0 diagonal pairing not positive at g=" + std::to_string(g) + ",n=" + std::to_string(n) +
                                      ",p=q=" + std::to_string(q) + ",h=j=" + std::to_string(j));
                }
        }
}

}  // namespace

std::vector<CheckResult> run_acceptance(Suite suite) {
    std::vector<CheckResult> results;
    Reporter report(results);
    TauEngine engine;
    const DfizTable& table = DfizTable::builtin();

    const bool all = suite == Suite::All;
    if (all || suite == Suite::Engine) {
        criterion1_golden(engine, report);
        criterion2_kappa(engine, report);
    }
    if (all || suite == Suite::M04) criterion3_m04(engine, table, report);
    if (all || suite == Suite::Dfiz) {
        criterion4_m11(engine, table, report);
        criterion5_m12(engine, table, report);
        criterion6_kappa_table(table, report);
        criterion7_structure(table, report);
    }
    if (all || suite == Suite::Lemma2) criterion8_determinants(report);
    if (all || suite == Suite::Dfiz) criterion9_cross_path(engine, table, report);
    if (all || suite == Suite::Engine) criterion10_oracles(engine, report);
    if (all || suite == Suite::Lemma2) criterion11_vanishing(engine, report);
    return results;
}

}  // namespace taukappa
