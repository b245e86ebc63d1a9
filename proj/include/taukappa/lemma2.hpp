#pragma once

#include <array>

#include "taukappa/rational.hpp"
#include "taukappa/tau_engine.hpp"

namespace taukappa {

// Closed forms for T(s,r) = <tau_s tau_{3g-1-s}>_{g,2} / phi(g), r = 2g-2.
// Returns 0 for s < 0 (the standing convention); throws std::out_of_range
// for s > 5, where only the engine route exists.
Rational t_closed(int s, int r);

// U(s,r) = <tau_2 tau_s tau_{3g-2-s}>_{g,3} / phi(g) through T, valid for
// s not congruent to 2 mod 3 (throws std::domain_error otherwise).
Rational u_from_t(int s, int r);

// Engine-side counterparts (the closed forms are oracles for these).
Rational t_engine(TauEngine& engine, int s, int genus);
Rational u_engine(TauEngine& engine, int s, int genus);

// Coefficient matrix of the equations Eq_s (s = 0, 1, 3) in the unknowns
// (a, b, c) of x = a kappa_1 + b psi + c delta_irr, after clearing the
// common prefactor (r+n-1)! phi(g) / (r+2)!.
std::array<std::array<Rational, 3>, 3> eq_system(int r, int n);

Rational determinant3(const std::array<std::array<Rational, 3>, 3>& m);

// (36/875) (r-2) r^2 (r+2)^5 (n+r) (4r+17)
Rational lemma2_determinant_formula(int r, int n);

// Determinant of the g=2 system in (b, c) alone (rows Eq_0, Eq_1 at r=2).
Rational g2_reduced_determinant(int n);

}  // namespace taukappa
