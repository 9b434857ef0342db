#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace knotrep {

// Freely reduced word in a free group. Letters are (generator index, exponent)
// with exponent +1 or -1; reduction is maintained on every construction.
class Word {
public:
    using Letter = std::pair<int, int>;

    Word() = default;
    explicit Word(std::vector<Letter> letters) { for (auto& l : letters) push(l.first, l.second); }

    static Word generator(int g, int exp = 1) {
        Word w;
        w.push(g, exp);
        return w;
    }

    void push(int gen, int exp) {
        if (exp != 1 && exp != -1) {
            for (int i = 0; i < (exp > 0 ? exp : -exp); ++i) push(gen, exp > 0 ? 1 : -1);
            return;
        }
        if (!letters_.empty() && letters_.back().first == gen && letters_.back().second == -exp)
            letters_.pop_back();
        else
            letters_.emplace_back(gen, exp);
    }

    Word operator*(const Word& o) const {
        Word w = *this;
        for (auto& l : o.letters_) w.push(l.first, l.second);
        return w;
    }

    Word inverse() const {
        Word w;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.emplace_back(it->first, -it->second);
        return w;
    }

    Word conjugated_by(const Word& c) const { return c * (*this) * c.inverse(); }

    // replace every occurrence of generator g by the word repl (g^{-1} by repl^{-1})
    Word substituted(int g, const Word& repl) const {
        Word out;
        Word repl_inv = repl.inverse();
        for (auto& [gen, exp] : letters_) {
            if (gen == g) {
                const Word& r = exp == 1 ? repl : repl_inv;
                for (auto& l : r.letters()) out.push(l.first, l.second);
            } else {
                out.push(gen, exp);
            }
        }
        return out;
    }

    bool empty() const noexcept { return letters_.empty(); }
    size_t size() const noexcept { return letters_.size(); }
    const std::vector<Letter>& letters() const noexcept { return letters_; }

    int max_generator() const {
        int m = -1;
        for (auto& l : letters_) m = std::max(m, l.first);
        return m;
    }

    // total exponent weighted by phi (phi[g] = abelianization weight of g)
    long phi_weight(const std::vector<long>& phi) const {
        long s = 0;
        for (auto& [g, e] : letters_) s += e * phi.at(static_cast<size_t>(g));
        return s;
    }

    long exponent_sum(int g) const {
        long s = 0;
        for (auto& [gen, e] : letters_)
            if (gen == g) s += e;
        return s;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (letters_.empty()) return "1";
        std::string out;
        for (auto& [g, e] : letters_) {
            if (!out.empty()) out += ' ';
            out += g < static_cast<int>(names.size()) ? names[static_cast<size_t>(g)]
                                                      : "g" + std::to_string(g);
            if (e < 0) out += "^-1";
        }
        return out;
    }

    auto operator<=>(const Word&) const = default;

private:
    std::vector<Letter> letters_;
};

} // namespace knotrep
