#include "taukappa/kappa.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace taukappa {

KappaMonomial KappaMonomial::of(std::vector<int> indices) {
    for (int i : indices)
        if (i < 0) throw std::invalid_argument("KappaMonomial: negative index");
    std::sort(indices.begin(), indices.end(), std::greater<int>());
    return KappaMonomial{std::move(indices)};
}

long KappaMonomial::weight() const {
    long w = 0;
    for (int i : indices) w += i;
    return w;
}

KappaPolynomial KappaPolynomial::monomial(KappaMonomial m, Rational coefficient) {
    KappaPolynomial p;
    p.add(m, coefficient);
    return p;
}

void KappaPolynomial::add(const KappaMonomial& m, const Rational& coefficient) {
    if (coefficient.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coefficient);
        return;
    }
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
}

KappaPolynomial& KappaPolynomial::operator+=(const KappaPolynomial& other) {
    for (const auto& [m, c] : other.terms_) add(m, c);
    return *this;
}

KappaPolynomial& KappaPolynomial::operator*=(const Rational& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
}

KappaPolynomial KappaPolynomial::operator*(const KappaPolynomial& other) const {
    KappaPolynomial out;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : other.terms_) {
            std::vector<int> merged = m1.indices;
            merged.insert(merged.end(), m2.indices.begin(), m2.indices.end());
            out.add(KappaMonomial::of(std::move(merged)), c1 * c2);
        }
    return out;
}

std::string KappaPolynomial::str() const {
    if (terms_.empty()) return "0";
    // Highest level first, then heavier monomials first.
    std::vector<const std::pair<const KappaMonomial, Rational>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        if (a->first.level() != b->first.level()) return a->first.level() > b->first.level();
        return a->first.indices < b->first.indices;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : order) {
        Rational c = t->second;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        first = false;
        os << c.str();
        // ascending powers read naturally: k1^2*k2
        std::vector<int> asc(t->first.indices.rbegin(), t->first.indices.rend());
        for (std::size_t i = 0; i < asc.size();) {
            std::size_t j = i;
            while (j < asc.size() && asc[j] == asc[i]) ++j;
            os << "*k" << asc[i];
            if (j - i > 1) os << "^" << (j - i);
            i = j;
        }
    }
    return os.str();
}

void for_each_set_partition(int size, const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    std::vector<std::vector<int>> blocks;
    std::function<void(int)> rec = [&](int next) {
        if (next == size) {
            fn(blocks);
            return;
        }
        // index loop: recursion grows and shrinks `blocks`, so references
        // into it would dangle
        const std::size_t fixed = blocks.size();
        for (std::size_t bi = 0; bi < fixed; ++bi) {
            blocks[bi].push_back(next);
            rec(next + 1);
            blocks[bi].pop_back();
        }
        blocks.push_back({next});
        rec(next + 1);
        blocks.pop_back();
    };
    if (size < 0) throw std::invalid_argument("for_each_set_partition: negative size");
    rec(0);
}

KappaPolynomial r_polynomial(const std::vector<int>& indices) {
    if (indices.empty()) throw std::invalid_argument("r_polynomial: needs at least one index");
    KappaPolynomial out;
    for_each_set_partition(static_cast<int>(indices.size()), [&](const std::vector<std::vector<int>>& partition) {
        mpz_class coef = 1;
        std::vector<int> mono;
        mono.reserve(partition.size());
        for (const auto& block : partition) {
            coef *= factorial(static_cast<long>(block.size()) - 1);
            int sum = 0;
            for (int pos : block) sum += indices[pos];
            mono.push_back(sum);
        }
        out.add(KappaMonomial::of(std::move(mono)), Rational(coef, mpz_class(1)));
    });
    return out;
}

Rational mixed_integral(TauEngine& engine, int genus, const std::vector<int>& psi, const KappaMonomial& kappa) {
    const int n = static_cast<int>(psi.size());
    // kappa_0 is the scalar 2g-2+n on Mbar_{g,n}.
    Rational scalar(1);
    std::vector<int> positive;
    positive.reserve(kappa.indices.size());
    for (int i : kappa.indices) {
        if (i == 0)
            scalar *= Rational(2L * genus - 2 + n);
        else
            positive.push_back(i);
    }
    if (positive.empty()) return scalar * engine.tau(genus, psi);

    // R_{b_1...b_l} integrates to the pure bracket with insertions b_j + 1;
    // peel off every coarser partition to isolate the identity monomial.
    std::vector<int> with_r = psi;
    for (int b : positive) with_r.push_back(b + 1);
    Rational acc = engine.tau(genus, std::move(with_r));
    for_each_set_partition(static_cast<int>(positive.size()), [&](const std::vector<std::vector<int>>& partition) {
        if (partition.size() == positive.size()) return;  // identity partition: the unknown
        mpz_class coef = 1;
        std::vector<int> mono;
        mono.reserve(partition.size());
        for (const auto& block : partition) {
            coef *= factorial(static_cast<long>(block.size()) - 1);
            int sum = 0;
            for (int pos : block) sum += positive[pos];
            mono.push_back(sum);
        }
        acc -= Rational(coef, mpz_class(1)) * mixed_integral(engine, genus, psi, KappaMonomial::of(std::move(mono)));
    });
    return scalar * acc;
}

Rational mixed_integral(TauEngine& engine, int genus, const std::vector<int>& psi, const KappaPolynomial& poly) {
    Rational total;
    for (const auto& [m, c] : poly.terms()) total += c * mixed_integral(engine, genus, psi, m);
    return total;
}

Rational kappa_tilde_integral(TauEngine& engine, int genus, const std::vector<int>& psi, int index) {
    if (index < 1) throw std::invalid_argument("kappa_tilde_integral: index must be >= 1");
    Rational total = mixed_integral(engine, genus, psi, KappaMonomial::of({index}));
    for (std::size_t i = 0; i < psi.size(); ++i) {
        std::vector<int> bumped = psi;
        bumped[i] += index;
        total -= engine.tau(genus, std::move(bumped));
    }
    return total;
}

}  // namespace taukappa
