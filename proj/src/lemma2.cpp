#include "taukappa/lemma2.hpp"

#include <stdexcept>

namespace taukappa {

Rational t_closed(int s, int r) {
    const Rational R(static_cast<long>(r));
    switch (s) {
        case 0:
            return Rational(1);
        case 1:
            return R + Rational(1);
        case 2:
            return ((Rational(3) * R + 3) * (Rational(3) * R + 1) + Rational(6) * (R + 2)) / Rational(15);
        case 3:
            return ((Rational(3) * R + 3) * (Rational(3) * R + 1) * (Rational(3) * R - 1) +
                    Rational(36) * R * (R + 2) + Rational(3, 2) * (R + 2)) /
                   Rational(105);
        case 4:
            return ((Rational(3) * R + 3) * (Rational(3) * R + 1) * (Rational(3) * R - 1) * (Rational(3) * R - 3) +
                    Rational(12) * (R + 2) * (Rational(15) + Rational(9, 2) * R + Rational(3, 8)) * t_closed(1, r - 2) +
                    Rational(180) * (R + 2) * t_closed(2, r - 2)) /
                   Rational(945);
        case 5:
            return ((Rational(3) * R + 3) * (Rational(3) * R + 1) * (Rational(3) * R - 1) * (Rational(3) * R - 3) *
                        (Rational(3) * R - 5) +
                    Rational(12) * (R + 2) *
                        ((Rational(105) + Rational(45) * R + Rational(15, 8)) * t_closed(2, r - 2) +
                         Rational(105) * t_closed(3, r - 2))) /
                   Rational(10395);
        default:
            if (s < 0) return Rational(0);
            throw std::out_of_range("t_closed: no closed form for s > 5");
    }
}

Rational u_from_t(int s, int r) {
    if (((s % 3) + 3) % 3 == 2)
        throw std::domain_error("u_from_t: formula not asserted for s = 2 mod 3");
    const Rational R(static_cast<long>(r));
    return (Rational(2L * s + 3) * Rational(2L * s + 1) * t_closed(s + 1, r) +
            (Rational(3) * R - 2 * s + 5) * (Rational(3) * R - 2 * s + 3) * t_closed(s, r) +
            Rational(6) * (R + 2) * (t_closed(s - 2, r - 2) + Rational(2) * t_closed(s - 1, r - 2) + t_closed(s, r - 2))) /
           Rational(15);
}

Rational t_engine(TauEngine& engine, int s, int genus) {
    if (s < 0) return Rational(0);
    const int dual = 3 * genus - 1 - s;
    if (dual < 0) return Rational(0);
    return engine.tau(genus, {s, dual}) / phi(genus);
}

Rational u_engine(TauEngine& engine, int s, int genus) {
    if (s < 0) return Rational(0);
    const int dual = 3 * genus - 2 - s;
    if (dual < 0) return Rational(0);
    return engine.tau(genus, {2, s, dual}) / phi(genus);
}

std::array<std::array<Rational, 3>, 3> eq_system(int r, int n) {
    if (r < -2 || r % 2 != 0) throw std::invalid_argument("eq_system: r must be even and >= -2");
    if (n < 2) throw std::invalid_argument("eq_system: n must be >= 2");
    std::array<std::array<Rational, 3>, 3> m;
    const int rows[3] = {0, 1, 3};
    for (int row = 0; row < 3; ++row) {
        const int s = rows[row];
        const Rational u = u_from_t(s, r);
        m[row][0] = Rational(static_cast<long>(r) + n) * u;
        m[row][1] = Rational(static_cast<long>(n) - 2) * u +
                    Rational(static_cast<long>(r) + 2) * (t_closed(s + 1, r) + t_closed(s, r));
        m[row][2] = Rational(6) * Rational(static_cast<long>(r) + 2) * Rational(static_cast<long>(r) + 2) *
                    (t_closed(s - 2, r - 2) + Rational(2) * t_closed(s - 1, r - 2) + t_closed(s, r - 2));
    }
    return m;
}

Rational determinant3(const std::array<std::array<Rational, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Rational lemma2_determinant_formula(int r, int n) {
    const Rational R(static_cast<long>(r));
    Rational rp2_5(1);
    for (int i = 0; i < 5; ++i) rp2_5 *= R + 2;
    return Rational(36, 875) * (R - 2) * R * R * rp2_5 * Rational(static_cast<long>(n) + r) *
           (Rational(4) * R + 17);
}

Rational g2_reduced_determinant(int n) {
    const auto m = eq_system(2, n);
    return m[0][1] * m[1][2] - m[0][2] * m[1][1];
}

}  // namespace taukappa
