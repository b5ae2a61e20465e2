#pragma once

// q-integers, q-factorials, Gaussian binomials and q-exponentials of
// nilpotent operators acting on finite free Z[Gamma]-modules.

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qcanon/coeff.hpp"
#include "qcanon/errors.hpp"

namespace qcanon {

enum class QBase { Q, QInv };

/// (n)_q = 1 + q^2 + ... + q^{2n-2}, (0)_q = (1)_q = 1; QInv substitutes q^{-1}.
GammaLaurent q_int(int n, QBase base = QBase::Q);
GammaLaurent q_factorial(int n, QBase base = QBase::Q);
/// Gaussian binomial with binom(n+1,i) = binom(n,i) + q^{2n-2i+2} binom(n,i-1); 0 outside 0..n.
GammaLaurent q_binomial(int n, int i, QBase base = QBase::Q);

/// Coordinates of a vector in a module with distinguished basis indexed by Key.
template <class Key>
using ModuleVector = std::map<Key, GammaLaurent>;

template <class Key>
void add_scaled(ModuleVector<Key>& acc, const ModuleVector<Key>& x, const GammaLaurent& c) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : x) {
        auto [it, inserted] = acc.try_emplace(k, v * c);
        if (!inserted) {
            it->second += v * c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

/// A linear operator given by its images of the basis vectors of a finite
/// domain, with a bound N such that X^N vanishes on the whole domain.
template <class Key>
class LocalOperator {
public:
    using Vector = ModuleVector<Key>;

    LocalOperator(std::map<Key, Vector> images, int nilpotencyBound)
        : images_(std::move(images)), bound_(nilpotencyBound) {
        for (const auto& [k, img] : images_) {
            Vector x{{k, GammaLaurent(1)}};
            for (int i = 0; i < bound_; ++i) x = apply(x);
            if (!x.empty()) throw Error("LocalOperator: X^" + std::to_string(bound_) + " does not vanish");
        }
    }

    /// Builds the operator from a basis-vector action on the given domain.
    template <class F>
    static LocalOperator from_action(const std::vector<Key>& domain, F&& action, int nilpotencyBound) {
        std::map<Key, Vector> images;
        for (const auto& k : domain) images.emplace(k, action(k));
        return LocalOperator(std::move(images), nilpotencyBound);
    }

    Vector apply(const Vector& x) const {
        Vector out;
        for (const auto& [k, c] : x) {
            auto it = images_.find(k);
            if (it == images_.end()) throw OutOfCell("LocalOperator applied outside its domain");
            add_scaled(out, it->second, c);
        }
        return out;
    }

    LocalOperator scaled(const GammaLaurent& c) const {
        std::map<Key, Vector> images;
        for (const auto& [k, img] : images_) {
            Vector v;
            add_scaled(v, img, c);
            images.emplace(k, std::move(v));
        }
        return LocalOperator(std::move(images), bound_);
    }

    /// Sum of two operators on the same domain; the bound is the sum of bounds.
    friend LocalOperator operator+(const LocalOperator& a, const LocalOperator& b) {
        std::map<Key, Vector> images = a.images_;
        for (const auto& [k, img] : b.images_) add_scaled(images[k], img, GammaLaurent(1));
        return LocalOperator(std::move(images), a.bound_ + b.bound_);
    }

    int nilpotency_bound() const { return bound_; }
    const std::map<Key, Vector>& images() const { return images_; }

private:
    std::map<Key, Vector> images_;
    int bound_ = 0;
};

/// sum_n (sign*X)^n x / (n)_base!, each term divided exactly.
template <class Key>
ModuleVector<Key> q_exp_apply(const LocalOperator<Key>& X, const ModuleVector<Key>& x, QBase base, int sign = 1) {
    ModuleVector<Key> result = x;
    ModuleVector<Key> power = x;
    for (int n = 1; !power.empty(); ++n) {
        if (n > X.nilpotency_bound()) throw Error("q_exp_apply: operator not nilpotent within bound");
        power = X.apply(power);
        if (sign < 0)
            for (auto& [k, c] : power) c = -c;
        const GammaLaurent fact = q_factorial(n, base);
        for (const auto& [k, c] : power) {
            ModuleVector<Key> term{{k, divide_exact(c, fact)}};
            add_scaled(result, term, GammaLaurent(1));
        }
    }
    return result;
}

}  // namespace qcanon
