#include "taukappa/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace taukappa {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) {
    if (sgn(v_.get_den()) == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::from_string(std::string_view text) {
    auto is_integer = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer(num) || !is_integer(den))
        throw std::invalid_argument("Rational: malformed literal '" + std::string(text) + "'");
    mpz_class n{std::string(num)};
    mpz_class d{std::string(den)};
    return Rational(n, d);
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

mpz_class factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of negative argument");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class odd_double_factorial(long m) {
    if (m < -1 || m % 2 == 0) throw std::domain_error("odd_double_factorial: argument must be odd and >= -1");
    mpz_class r = 1;
    for (long k = m; k > 1; k -= 2) r *= k;
    return r;
}

}  // namespace taukappa
