#pragma once

#include <map>

#include "knotrep/matrix.hpp"
#include "knotrep/word.hpp"

namespace knotrep {

// Formal integer combination of free-group words; the carrier of Fox
// derivatives. No zero coefficients are stored.
class GroupRingElement {
public:
    using Terms = std::map<Word, long long>;

    GroupRingElement() = default;
    static GroupRingElement one() { return from_word(Word()); }
    static GroupRingElement from_word(const Word& w, long long c = 1) {
        GroupRingElement e;
        e.add(w, c);
        return e;
    }

    void add(const Word& w, long long c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GroupRingElement operator+(const GroupRingElement& o) const {
        GroupRingElement r = *this;
        for (auto& [w, c] : o.terms_) r.add(w, c);
        return r;
    }
    GroupRingElement operator-(const GroupRingElement& o) const {
        GroupRingElement r = *this;
        for (auto& [w, c] : o.terms_) r.add(w, -c);
        return r;
    }
    GroupRingElement operator*(const GroupRingElement& o) const {
        GroupRingElement r;
        for (auto& [w1, c1] : terms_)
            for (auto& [w2, c2] : o.terms_) r.add(w1 * w2, c1 * c2);
        return r;
    }
    GroupRingElement times_word(const Word& w, long long c = 1) const {
        GroupRingElement r;
        for (auto& [u, cu] : terms_) r.add(u * w, cu * c);
        return r;
    }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_; }
    const Terms& terms() const noexcept { return terms_; }

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    Terms terms_;
};

// Fox derivative d(r)/d(g): d(uv) = du + u dv, d(g)/d(g) = 1, d(g^-1)/d(g) = -g^-1
GroupRingElement fox_derivative(const Word& r, int gen);

// module action of the group: invertible matrices per generator
template <class S>
struct ModuleAction {
    int dim = 0;
    std::vector<Matrix<S>> act;
    std::vector<Matrix<S>> act_inv;
    std::string descriptor;

    const Matrix<S>& of_letter(int gen, int exp) const {
        return exp > 0 ? act[static_cast<size_t>(gen)] : act_inv[static_cast<size_t>(gen)];
    }
};

template <class S>
Matrix<S> evaluate_word(const Word& w, const ModuleAction<S>& a) {
    Matrix<S> m = Matrix<S>::identity(a.dim);
    for (auto& [g, e] : w.letters()) m = m * a.of_letter(g, e);
    return m;
}

// ring-homomorphic evaluation: words to products, sums to sums
template <class S>
Matrix<S> evaluate(const GroupRingElement& e, const ModuleAction<S>& a) {
    Matrix<S> m(a.dim, a.dim);
    for (auto& [w, c] : e.terms()) m = m + evaluate_word(w, a) * S(static_cast<long>(c));
    return m;
}

} // namespace knotrep
