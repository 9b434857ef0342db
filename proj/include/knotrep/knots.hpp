#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "knotrep/word.hpp"

namespace knotrep {

enum class KnotFormat { braid, pd, name, presentation };

struct KnotInput {
    KnotFormat format;
    std::vector<int> braid;                    // signed generator indices
    std::vector<std::array<int, 4>> pd;        // 4-tuples of edge labels
    std::string name;                          // table entry
    // explicit presentation
    std::vector<std::string> generator_names;
    std::vector<Word> relators;
};

// Deficiency-one presentation of a knot group. phi is the abelianization
// (meridian -> 1); for Wirtinger-derived presentations phi == 1 on every
// generator and there are g-1 relators.
struct KnotPresentation {
    int generators = 0;
    std::vector<Word> relators;
    std::vector<long> phi;
    int meridian = 0;
    std::vector<std::string> names; // printing only

    long exponent_sum(const Word& w) const;
    void validate() const; // throws on a violated invariant
};

KnotInput parse_knot_input(const std::string& text, KnotFormat format);

KnotPresentation wirtinger_presentation(const KnotInput& input);

// convenience: braid word -> presentation
KnotPresentation presentation_from_braid(const std::vector<int>& braid);
KnotPresentation presentation_from_pd(const std::vector<std::array<int, 4>>& pd);

// generator elimination down to `target_gens` generators (Tietze moves); used
// only behind an explicit flag, results are presentation-independent anyway
KnotPresentation tietze_reduce(const KnotPresentation& p, int target_gens = 2);

struct KnotTableEntry {
    std::string name;
    std::vector<int> braid;
    std::vector<std::array<int, 4>> pd;
    std::string comment;
};

std::vector<KnotTableEntry> load_knot_table(const std::string& path);
std::string default_table_path(); // compile-time default, overridable by KNOTREP_TABLE

// resolves name via the table (path empty: env var, then compiled default)
KnotPresentation presentation_for_name(const std::string& name, const std::string& table_path = "");

} // namespace knotrep
