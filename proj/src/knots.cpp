#include "knotrep/knots.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "knotrep/matrix.hpp"

#ifndef KNOTREP_DEFAULT_TABLE_PATH
#define KNOTREP_DEFAULT_TABLE_PATH "data/knots.json"
#endif

namespace knotrep {

long KnotPresentation::exponent_sum(const Word& w) const {
    if (w.max_generator() >= generators)
        throw Error("invalid_argument", "word references generator out of range");
    return w.phi_weight(phi);
}

void KnotPresentation::validate() const {
    if (generators <= 0) throw Error("invalid_argument", "presentation needs at least one generator");
    if (static_cast<int>(phi.size()) != generators)
        throw Error("invalid_argument", "phi must assign a weight to every generator");
    if (meridian < 0 || meridian >= generators)
        throw Error("invalid_argument", "meridian index out of range");
    if (phi[static_cast<size_t>(meridian)] != 1)
        throw Error("invalid_argument", "phi(meridian) must be 1");
    for (const Word& r : relators) {
        if (r.max_generator() >= generators)
            throw Error("invalid_argument", "relator references generator out of range");
        if (r.phi_weight(phi) != 0)
            throw Error("invalid_argument", "relator has nonzero abelianization weight");
    }
    // abelianization must be Z: relator exponent matrix has rank g-1 over Q
    // and all elementary divisors 1 (checked via minor gcds when square-able)
    if (!relators.empty()) {
        Matrix<Rational> A(static_cast<int>(relators.size()), generators);
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < generators; ++j)
                A(i, j) = Rational(relators[static_cast<size_t>(i)].exponent_sum(j));
        if (rank_exact(A) != generators - 1)
            throw Error("invalid_argument", "abelianization is not infinite cyclic");
    } else if (generators != 1) {
        throw Error("invalid_argument", "relator-free presentation must have one generator");
    }
}

namespace {

std::vector<std::string> default_names(int g) {
    std::vector<std::string> n(static_cast<size_t>(g));
    for (int i = 0; i < g; ++i) n[static_cast<size_t>(i)] = "x" + std::to_string(i + 1);
    return n;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[static_cast<size_t>(std::max(ra, rb))] = std::min(ra, rb);
    }
};

KnotPresentation finish_wirtinger(int num_ids, UnionFind& uf,
                                  const std::vector<std::vector<std::pair<int, int>>>& raw_relators,
                                  int meridian_id) {
    std::map<int, int> remap;
    for (int i = 0; i < num_ids; ++i) {
        int r = uf.find(i);
        if (!remap.count(r)) {
            int next = static_cast<int>(remap.size());
            remap[r] = next;
        }
    }
    int g = static_cast<int>(remap.size());
    std::vector<Word> rels;
    for (const auto& raw : raw_relators) {
        Word w;
        for (auto [id, e] : raw) w.push(remap[uf.find(id)], e);
        if (!w.empty()) rels.push_back(std::move(w));
    }
    // one Wirtinger relator is redundant; drop the last nontrivial one
    if (static_cast<int>(rels.size()) == g) rels.pop_back();
    if (static_cast<int>(rels.size()) != g - 1)
        throw Error("internal_error", "unexpected Wirtinger relator count");
    KnotPresentation p;
    p.generators = g;
    p.relators = std::move(rels);
    p.phi.assign(static_cast<size_t>(g), 1);
    p.meridian = remap[uf.find(meridian_id)];
    p.names = default_names(g);
    p.validate();
    return p;
}

} // namespace

KnotPresentation presentation_from_braid(const std::vector<int>& braid) {
    for (int c : braid)
        if (c == 0) throw Error("parse_error", "braid letters must be nonzero");
    int strands = 1;
    for (int c : braid) strands = std::max(strands, std::abs(c) + 1);
    // closure components = cycles of the strand permutation
    std::vector<int> perm(static_cast<size_t>(strands));
    std::iota(perm.begin(), perm.end(), 0);
    for (int c : braid) std::swap(perm[static_cast<size_t>(std::abs(c) - 1)], perm[static_cast<size_t>(std::abs(c))]);
    {
        std::vector<bool> seen(static_cast<size_t>(strands), false);
        int cycles = 0;
        for (int s = 0; s < strands; ++s) {
            if (seen[static_cast<size_t>(s)]) continue;
            ++cycles;
            int t = s;
            while (!seen[static_cast<size_t>(t)]) {
                seen[static_cast<size_t>(t)] = true;
                t = perm[static_cast<size_t>(t)];
            }
        }
        if (cycles != 1)
            throw Error("not_a_knot",
                        "braid closure has " + std::to_string(cycles) + " components; phi needs a knot");
    }
    std::vector<int> arcs(static_cast<size_t>(strands));
    std::iota(arcs.begin(), arcs.end(), 0);
    int next_id = strands;
    std::vector<std::vector<std::pair<int, int>>> relators;
    for (int c : braid) {
        int i = std::abs(c) - 1;
        if (c > 0) {
            int over = arcs[static_cast<size_t>(i)], under = arcs[static_cast<size_t>(i) + 1];
            int fresh = next_id++;
            relators.push_back({{fresh, -1}, {over, 1}, {under, 1}, {over, -1}});
            arcs[static_cast<size_t>(i)] = fresh;
            arcs[static_cast<size_t>(i) + 1] = over;
        } else {
            int over = arcs[static_cast<size_t>(i) + 1], under = arcs[static_cast<size_t>(i)];
            int fresh = next_id++;
            relators.push_back({{fresh, -1}, {over, -1}, {under, 1}, {over, 1}});
            arcs[static_cast<size_t>(i)] = over;
            arcs[static_cast<size_t>(i) + 1] = fresh;
        }
    }
    UnionFind uf(next_id);
    for (int s = 0; s < strands; ++s) uf.unite(arcs[static_cast<size_t>(s)], s);
    return finish_wirtinger(next_id, uf, relators, 0);
}

KnotPresentation presentation_from_pd(const std::vector<std::array<int, 4>>& pd) {
    if (pd.empty()) throw Error("parse_error", "empty PD code");
    std::map<int, int> edge_count;
    for (const auto& x : pd)
        for (int e : x) ++edge_count[e];
    int ne = static_cast<int>(edge_count.size());
    for (auto& [e, c] : edge_count) {
        if (c != 2) throw Error("parse_error", "PD edge " + std::to_string(e) + " appears " +
                                                   std::to_string(c) + " times (want 2)");
        if (e < 1 || e > ne) throw Error("parse_error", "PD edges must be 1..2*crossings");
    }
    if (ne != 2 * static_cast<int>(pd.size()))
        throw Error("parse_error", "PD code must have 2*crossings distinct edges");
    auto succ = [ne](int e) { return e % ne + 1; };
    UnionFind uf(ne + 1);
    struct Crossing { int under_in, under_out, over; int sign; };
    std::vector<Crossing> crossings;
    for (const auto& [a, b, c, d] : pd) {
        int over_in, over_out, sign;
        if (succ(b) == d) {
            over_in = b; over_out = d; sign = +1;
        } else if (succ(d) == b) {
            over_in = d; over_out = b; sign = -1;
        } else {
            throw Error("parse_error", "cannot orient over-strand of PD crossing");
        }
        if (succ(a) != c)
            throw Error("parse_error", "PD under-strand must run a -> c with c = a+1");
        crossings.push_back({a, c, over_in, sign});
        uf.unite(over_in, over_out); // the over-strand is one arc
    }
    std::vector<std::vector<std::pair<int, int>>> relators;
    for (const auto& cr : crossings)
        relators.push_back({{cr.under_out, -1}, {cr.over, cr.sign}, {cr.under_in, 1}, {cr.over, -cr.sign}});
    // ids 1..ne used; id 0 unused by construction, merge it away
    uf.unite(0, 1);
    return finish_wirtinger(ne + 1, uf, relators, 1);
}

namespace {

// "<S,T | S T S T^-1 S^-1 T^-1>"  or  "<S,T | STS = TST>" (single-letter names)
KnotInput parse_presentation_text(const std::string& text) {
    auto lt = text.find('<');
    auto bar = text.find('|');
    auto gt = text.rfind('>');
    if (lt == std::string::npos || bar == std::string::npos || gt == std::string::npos || !(lt < bar && bar < gt))
        throw Error("parse_error", "presentation must look like <gens | relators>");
    KnotInput in;
    in.format = KnotFormat::presentation;
    std::string gen_part = text.substr(lt + 1, bar - lt - 1);
    std::string rel_part = text.substr(bar + 1, gt - bar - 1);
    std::map<std::string, int> gen_index;
    {
        std::string tok;
        auto flush = [&] {
            if (tok.empty()) return;
            if (gen_index.count(tok)) throw Error("parse_error", "duplicate generator '" + tok + "'");
            int idx = static_cast<int>(gen_index.size());
            gen_index[tok] = idx;
            in.generator_names.push_back(tok);
            tok.clear();
        };
        for (char c : gen_part) {
            if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
                flush();
            else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                tok += c;
            else
                throw Error("parse_error", std::string("bad character '") + c + "' in generator list");
        }
        flush();
    }
    if (in.generator_names.empty()) throw Error("parse_error", "no generators");

    bool single_letter = true;
    for (auto& n : in.generator_names) single_letter &= n.size() == 1;

    auto parse_word = [&](const std::string& s) {
        Word w;
        size_t i = 0;
        auto skip = [&] { while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i; };
        skip();
        while (i < s.size()) {
            std::string name;
            if (single_letter) {
                name = s.substr(i, 1);
                ++i;
            } else {
                size_t j = i;
                while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
                if (j == i)
                    throw Error("parse_error", "unexpected character at position " + std::to_string(i) +
                                                   " in relator '" + s + "'");
                name = s.substr(i, j - i);
                i = j;
            }
            auto it = gen_index.find(name);
            if (it == gen_index.end())
                throw Error("parse_error", "unknown generator '" + name + "' in relator");
            long exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t j = i;
                if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == i) throw Error("parse_error", "missing exponent at position " + std::to_string(i));
                exp = std::stol(s.substr(i, j - i));
                i = j;
            }
            w.push(it->second, static_cast<int>(exp));
            skip();
        }
        return w;
    };

    std::stringstream ss(rel_part);
    std::string rel;
    while (std::getline(ss, rel, ',')) {
        bool blank = std::all_of(rel.begin(), rel.end(),
                                 [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (blank) continue;
        auto eq = rel.find('=');
        Word w = eq == std::string::npos
                     ? parse_word(rel)
                     : parse_word(rel.substr(0, eq)) * parse_word(rel.substr(eq + 1)).inverse();
        in.relators.push_back(std::move(w));
    }
    return in;
}

std::vector<int> parse_braid_text(const std::string& text) {
    std::vector<int> out;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        std::string t = tok;
        tok.clear();
        bool neg = false;
        if (t[0] == 's' || t[0] == 'S') t = t.substr(1); // allow s1 s2^-1 style
        auto caret = t.find('^');
        if (caret != std::string::npos) {
            std::string e = t.substr(caret + 1);
            t = t.substr(0, caret);
            if (e == "-1")
                neg = true;
            else if (e != "1")
                throw Error("parse_error", "braid exponent must be 1 or -1, got '" + e + "'");
        }
        try {
            int v = std::stoi(t);
            out.push_back(neg ? -v : v);
        } catch (...) {
            throw Error("parse_error", "bad braid letter '" + tok + "'");
        }
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',')
            flush();
        else
            tok += c;
    }
    flush();
    return out;
}

std::vector<std::array<int, 4>> parse_pd_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error("parse_error", std::string("PD code must be a JSON array of 4-tuples: ") + e.what());
    }
    std::vector<std::array<int, 4>> pd;
    if (!j.is_array()) throw Error("parse_error", "PD code must be an array");
    for (auto& x : j) {
        if (!x.is_array() || x.size() != 4) throw Error("parse_error", "each PD crossing needs 4 edges");
        pd.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), x[3].get<int>()});
    }
    return pd;
}

} // namespace

KnotInput parse_knot_input(const std::string& text, KnotFormat format) {
    if (text.empty()) throw Error("parse_error", "empty knot input");
    KnotInput in;
    in.format = format;
    switch (format) {
    case KnotFormat::braid:
        in.braid = parse_braid_text(text);
        return in;
    case KnotFormat::pd:
        in.pd = parse_pd_text(text);
        return in;
    case KnotFormat::name:
        in.name = text;
        return in;
    case KnotFormat::presentation:
        return parse_presentation_text(text);
    }
    throw Error("internal_error", "unreachable");
}

namespace {

// phi for a user presentation: integer kernel of the relator exponent matrix,
// normalized so the designated meridian gets +1
KnotPresentation presentation_from_input(const KnotInput& in) {
    int g = static_cast<int>(in.generator_names.size());
    KnotPresentation p;
    p.generators = g;
    p.relators = in.relators;
    p.names = in.generator_names;
    if (g == 1 && in.relators.empty()) {
        p.phi = {1};
        p.meridian = 0;
        p.validate();
        return p;
    }
    Matrix<Rational> A(static_cast<int>(in.relators.size()), g);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < g; ++j) A(i, j) = Rational(in.relators[static_cast<size_t>(i)].exponent_sum(j));
    Matrix<Rational> ker = nullspace_exact(A);
    if (ker.cols() != 1)
        throw Error("not_a_knot", "abelianization rank is " + std::to_string(ker.cols()) + ", expected 1");
    // scale to primitive integer vector
    PolyQ col(static_cast<size_t>(g));
    for (int i = 0; i < g; ++i) col[static_cast<size_t>(i)] = ker(i, 0);
    col = poly_primitive(col);
    p.phi.resize(static_cast<size_t>(g));
    for (int i = 0; i < g; ++i) {
        if (col[static_cast<size_t>(i)].get_den() != 1)
            throw Error("internal_error", "phi normalization failed");
        p.phi[static_cast<size_t>(i)] = col[static_cast<size_t>(i)].get_num().get_si();
    }
    int mer = -1;
    for (int i = 0; i < g && mer < 0; ++i)
        if (p.phi[static_cast<size_t>(i)] == 1 || p.phi[static_cast<size_t>(i)] == -1) mer = i;
    if (mer < 0) throw Error("not_a_knot", "no generator with phi = +-1 to serve as meridian");
    if (p.phi[static_cast<size_t>(mer)] == -1)
        for (auto& v : p.phi) v = -v;
    p.meridian = mer;
    p.validate();
    return p;
}

} // namespace

KnotPresentation wirtinger_presentation(const KnotInput& input) {
    switch (input.format) {
    case KnotFormat::braid:
        return presentation_from_braid(input.braid);
    case KnotFormat::pd:
        return presentation_from_pd(input.pd);
    case KnotFormat::name:
        return presentation_for_name(input.name);
    case KnotFormat::presentation:
        return presentation_from_input(input); // validated pass-through
    }
    throw Error("internal_error", "unreachable");
}

KnotPresentation tietze_reduce(const KnotPresentation& p, int target_gens) {
    std::vector<Word> rels = p.relators;
    std::vector<int> alive(static_cast<size_t>(p.generators));
    std::iota(alive.begin(), alive.end(), 0);
    while (static_cast<int>(alive.size()) > target_gens) {
        bool progress = false;
        for (size_t ri = 0; ri < rels.size() && !progress; ++ri) {
            const Word& r = rels[ri];
            std::map<int, int> occurrences;
            for (auto& [gg, ee] : r.letters()) ++occurrences[gg];
            for (auto& [gg, cnt] : occurrences) {
                if (cnt != 1 || gg == p.meridian) continue;
                // r = u g^e v  ==>  g^e = u^-1 v^-1
                size_t pos = 0;
                int e = 0;
                for (size_t k = 0; k < r.letters().size(); ++k)
                    if (r.letters()[k].first == gg) {
                        pos = k;
                        e = r.letters()[k].second;
                        break;
                    }
                Word u(std::vector<Word::Letter>(r.letters().begin(), r.letters().begin() + static_cast<long>(pos)));
                Word v(std::vector<Word::Letter>(r.letters().begin() + static_cast<long>(pos) + 1, r.letters().end()));
                Word repl = u.inverse() * v.inverse(); // g^e
                if (e == -1) repl = repl.inverse();
                std::vector<Word> next;
                for (size_t k = 0; k < rels.size(); ++k) {
                    if (k == ri) continue;
                    Word w = rels[k].substituted(gg, repl);
                    if (!w.empty()) next.push_back(std::move(w));
                }
                rels = std::move(next);
                alive.erase(std::find(alive.begin(), alive.end(), gg));
                progress = true;
                break;
            }
        }
        if (!progress)
            throw Error("tietze_stuck", "no generator occurs exactly once in a relator");
    }
    std::map<int, int> remap;
    for (size_t i = 0; i < alive.size(); ++i) remap[alive[i]] = static_cast<int>(i);
    KnotPresentation out;
    out.generators = static_cast<int>(alive.size());
    for (const Word& r : rels) {
        Word w;
        for (auto& [gg, ee] : r.letters()) w.push(remap.at(gg), ee);
        if (!w.empty()) out.relators.push_back(std::move(w));
    }
    out.phi.resize(alive.size());
    out.names.resize(alive.size());
    for (size_t i = 0; i < alive.size(); ++i) {
        out.phi[i] = p.phi[static_cast<size_t>(alive[i])];
        out.names[i] = p.names.empty() ? "x" + std::to_string(i + 1) : p.names[static_cast<size_t>(alive[i])];
    }
    out.meridian = remap.at(p.meridian);
    out.validate();
    return out;
}

std::string default_table_path() {
    if (const char* env = std::getenv("KNOTREP_TABLE"); env && *env) return env;
    return KNOTREP_DEFAULT_TABLE_PATH;
}

std::vector<KnotTableEntry> load_knot_table(const std::string& path) {
    std::string p = path.empty() ? default_table_path() : path;
    std::ifstream f(p);
    if (!f) throw Error("table_not_found", "cannot open knot table '" + p + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw Error("table_corrupt", "knot table '" + p + "' is not valid JSON: " + e.what());
    }
    if (!j.is_array()) throw Error("table_corrupt", "knot table must be a JSON array");
    std::vector<KnotTableEntry> out;
    for (auto& e : j) {
        KnotTableEntry t;
        if (!e.contains("name") || !e["name"].is_string())
            throw Error("table_corrupt", "table entry without a string 'name'");
        t.name = e["name"].get<std::string>();
        if (e.contains("braid")) {
            if (!e["braid"].is_array()) throw Error("table_corrupt", "braid must be an array: " + t.name);
            for (auto& v : e["braid"]) t.braid.push_back(v.get<int>());
        }
        if (e.contains("pd")) {
            for (auto& x : e["pd"]) {
                if (!x.is_array() || x.size() != 4)
                    throw Error("table_corrupt", "pd crossing must have 4 entries: " + t.name);
                t.pd.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), x[3].get<int>()});
            }
        }
        if (e.contains("comment")) t.comment = e["comment"].get<std::string>();
        out.push_back(std::move(t));
    }
    return out;
}

KnotPresentation presentation_for_name(const std::string& name, const std::string& table_path) {
    auto table = load_knot_table(table_path);
    for (const auto& e : table) {
        if (e.name != name) continue;
        if (!e.braid.empty() || e.name == "0_1") return presentation_from_braid(e.braid);
        if (!e.pd.empty()) return presentation_from_pd(e.pd);
        throw Error("table_corrupt", "table entry '" + name + "' has neither braid nor pd");
    }
    throw Error("unknown_knot", "knot '" + name + "' is not in the table");
}

} // namespace knotrep
