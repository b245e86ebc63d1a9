#include "taukappa/tau_engine.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace taukappa {

TauBracket TauBracket::canonical(int genus, std::vector<int> insertions) {
    std::sort(insertions.begin(), insertions.end(), std::greater<int>());
    return TauBracket{genus, std::move(insertions)};
}

long TauBracket::degree() const {
    return std::accumulate(insertions.begin(), insertions.end(), 0L);
}

std::size_t TauBracketHash::operator()(const TauBracket& b) const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::size_t>(b.genus);
    for (int d : b.insertions)
        h = (h * 1099511628211ull) ^ static_cast<std::size_t>(d + 1);
    return h;
}

const Rational* MemoTable::find(const TauBracket& key) const {
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
}

void MemoTable::insert(const TauBracket& key, const Rational& value) {
    auto [it, inserted] = values_.emplace(key, value);
    if (!inserted && it->second != value) {
        std::ostringstream os;
        os << "memo conflict for bracket g=" << key.genus << " d=(";
        for (std::size_t i = 0; i < key.insertions.size(); ++i)
            os << (i ? "," : "") << key.insertions[i];
        os << "): " << it->second << " vs " << value;
        throw MemoConflictError(os.str());
    }
}

void MemoTable::save(std::ostream& os) const {
    std::vector<const TauBracket*> keys;
    keys.reserve(values_.size());
    for (const auto& [k, v] : values_) keys.push_back(&k);
    std::sort(keys.begin(), keys.end(), [](const TauBracket* a, const TauBracket* b) {
        if (a->genus != b->genus) return a->genus < b->genus;
        return a->insertions < b->insertions;
    });
    os << "taukappa-cache v1\n";
    for (const TauBracket* k : keys) {
        os << k->genus << ';';
        for (std::size_t i = 0; i < k->insertions.size(); ++i)
            os << (i ? "," : "") << k->insertions[i];
        os << ';' << values_.at(*k) << '\n';
    }
}

void MemoTable::load(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "taukappa-cache v1")
        throw std::runtime_error("cache: missing 'taukappa-cache v1' header");
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw std::runtime_error("cache line " + std::to_string(lineno) + ": " + why);
        };
        auto p1 = line.find(';');
        auto p2 = line.find(';', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos) fail("expected g;d1,...,dn;p/q");
        int genus = 0;
        try {
            genus = std::stoi(line.substr(0, p1));
        } catch (const std::exception&) {
            fail("bad genus field");
        }
        std::vector<int> d;
        std::string mid = line.substr(p1 + 1, p2 - p1 - 1);
        std::istringstream ms(mid);
        std::string tok;
        while (std::getline(ms, tok, ',')) {
            try {
                d.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                fail("bad insertion '" + tok + "'");
            }
        }
        if (d.empty()) fail("empty insertion list");
        if (!std::is_sorted(d.begin(), d.end(), std::greater<int>())) fail("insertions not sorted descending");
        Rational value = Rational::from_string(line.substr(p2 + 1));
        insert(TauBracket{genus, std::move(d)}, value);  // conflict here is fatal
    }
}

Rational TauEngine::tau(int genus, std::vector<int> insertions) {
    if (insertions.empty()) return Rational(0);
    for (int d : insertions)
        if (d < 0) return Rational(0);
    if (genus < 0) return Rational(0);
    TauBracket key = TauBracket::canonical(genus, std::move(insertions));
    if (!key.dimension_ok() || !key.stable()) return Rational(0);
    if (const Rational* hit = memo_.find(key)) return *hit;
    Rational value = compute(key);
    memo_.insert(key, value);
    return value;
}

Rational TauEngine::tau_auto(std::vector<int> insertions) {
    if (insertions.empty()) return Rational(0);
    long deg = 0;
    for (int d : insertions) {
        if (d < 0) return Rational(0);
        deg += d;
    }
    long t = deg + 3 - static_cast<long>(insertions.size());
    if (t < 0 || t % 3 != 0) return Rational(0);
    return tau(static_cast<int>(t / 3), std::move(insertions));
}

Rational TauEngine::compute(const TauBracket& key) {
    const int g = key.genus;
    const auto& d = key.insertions;  // sorted descending
    const int n = key.n();

    if (g == 0 && n == 3) return Rational(1);        // <tau_0^3>_0
    if (g == 1 && n == 1) return Rational(1, 24);    // <tau_1>_1

    if (d.back() == 0) {
        // String equation: drop one tau_0, lower each positive index in turn.
        std::vector<int> rest(d.begin(), d.end() - 1);
        Rational sum;
        for (std::size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            std::vector<int> next = rest;
            --next[j];
            sum += tau(g, std::move(next));
        }
        return sum;
    }
    if (d.back() == 1 && 2 * g - 2 + (n - 1) > 0) {
        // Dilaton: <tau_1 X>_{g,n} = (2g-2+(n-1)) <X>_{g,n-1}.
        std::vector<int> rest(d.begin(), d.end() - 1);
        return Rational(2L * g - 2 + (n - 1)) * tau(g, std::move(rest));
    }

    // L_k relation on the maximal index d_max = k+1 >= 2.
    const int k = d.front() - 1;
    if (k < 1) throw std::logic_error("tau: no reduction applies (unreachable for stable brackets)");
    std::vector<int> rest(d.begin() + 1, d.end());
    const int m = static_cast<int>(rest.size());
    Rational total;
    for (int j = 0; j < m; ++j) {
        Rational coef(odd_double_factorial(2L * k + 2 * rest[j] + 1),
                      odd_double_factorial(2L * rest[j] - 1));
        std::vector<int> bumped = rest;
        bumped[j] += k;
        total += coef * tau(g, std::move(bumped));
    }
    for (int r = 0; r <= k - 1; ++r) {
        const int s = k - 1 - r;
        Rational coef(odd_double_factorial(2L * r + 1) * odd_double_factorial(2L * s + 1), mpz_class(2));
        std::vector<int> dropped = rest;
        dropped.push_back(r);
        dropped.push_back(s);
        total += coef * tau(g - 1, std::move(dropped));
        // Splitting sum over subsets I of the remaining insertions; factor
        // genera are dimension-inferred, unstable pieces vanish.
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
            std::vector<int> left{r}, right{s};
            for (int i = 0; i < m; ++i)
                ((mask >> i) & 1 ? left : right).push_back(rest[i]);
            Rational a = tau_auto(std::move(left));
            if (a.is_zero()) continue;
            total += coef * a * tau_auto(std::move(right));
        }
    }
    return total / Rational(odd_double_factorial(2L * k + 3), mpz_class(1));
}

Rational phi(int genus) {
    if (genus < 0) throw std::invalid_argument("phi: genus must be >= 0");
    Rational value(1);
    for (int i = 1; i <= genus; ++i) value /= Rational(24L * i);
    return value;
}

Rational genus0_oracle(std::vector<int> insertions) {
    const int n = static_cast<int>(insertions.size());
    if (n == 0) throw std::invalid_argument("genus0_oracle: empty insertion list");
    long deg = 0;
    for (int d : insertions) {
        if (d < 0) return Rational(0);
        deg += d;
    }
    if (deg != n - 3) {
        long t = deg + 3 - n;
        if (t > 0 && t % 3 == 0)
            throw std::invalid_argument("genus0_oracle: inferred genus " + std::to_string(t / 3) + " is not 0");
        return Rational(0);  // dimension failure
    }
    if (n == 3) return Rational(1);
    auto zero = std::find(insertions.begin(), insertions.end(), 0);
    if (zero == insertions.end())
        throw std::logic_error("genus0_oracle: no tau_0 insertion (impossible in genus 0)");
    std::vector<int> rest;
    rest.reserve(n - 1);
    for (auto it = insertions.begin(); it != insertions.end(); ++it)
        if (it != zero) rest.push_back(*it);
    Rational sum;
    for (std::size_t j = 0; j < rest.size(); ++j) {
        if (rest[j] == 0) continue;
        std::vector<int> next = rest;
        --next[j];
        sum += genus0_oracle(std::move(next));
    }
    return sum;
}

}  // namespace taukappa
