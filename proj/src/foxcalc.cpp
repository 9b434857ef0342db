#include "knotrep/foxcalc.hpp"

namespace knotrep {

GroupRingElement fox_derivative(const Word& r, int gen) {
    GroupRingElement out;
    Word prefix;
    for (auto& [g, e] : r.letters()) {
        if (e == 1) {
            if (g == gen) out.add(prefix, 1);
            prefix.push(g, 1);
        } else {
            prefix.push(g, -1);
            if (g == gen) out.add(prefix, -1);
        }
    }
    return out;
}

std::string GroupRingElement::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [w, c] : terms_) {
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        long long a = c > 0 ? c : -c;
        if (a != 1 || w.empty()) out += std::to_string(a);
        if (!w.empty()) {
            if (a != 1) out += "*";
            out += w.str(names);
        }
    }
    return out;
}

} // namespace knotrep
