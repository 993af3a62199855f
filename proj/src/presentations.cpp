#include "syang/presentations.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

#include "syang/errors.hpp"
#include "syang/matrixrep.hpp"

namespace syang {

const Relation* RelationSet::find(const std::string& label) const {
    for (auto& r : relations)
        if (r.label == label) return &r;
    return nullptr;
}

std::string RelationSet::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "syang/1";
    j["name"] = name;
    j["word"] = rd.word;
    j["affine"] = rd.affine;
    j["catalog"] = nlohmann::ordered_json::array();
    for (auto& g : catalog) j["catalog"].push_back(g.to_string());
    j["relations"] = nlohmann::ordered_json::array();
    for (auto& r : relations) j["relations"].push_back({{"label", r.label}, {"element", r.element.to_string()}});
    return j.dump(2);
}

Gen xgen(const RootDatum& rd, int sign, int label, int level) {
    int p = rd.root_parity(label);
    return sign > 0 ? xplus(label, level, p) : xminus(label, level, p);
}

Element X(const RootDatum& rd, int sign, int label, int level) { return Element(xgen(rd, sign, label, level)); }
Element Hc(int label, int level) { return Element(hgen(label, level)); }
Element Ht(int label) { return Element(htilde(label, 1)); }

Element htilde_expansion(int label) {
    return Hc(label, 1) - Hc(label, 0).scaled(Coeff::hbar(1, Q(1, 2))) * Hc(label, 0);
}

namespace {

std::string lab(const std::string& fam, std::initializer_list<int> idx) {
    std::string s = fam + "(";
    bool first = true;
    for (int k : idx) {
        if (!first) s += ",";
        s += std::to_string(k);
        first = false;
    }
    return s + ")";
}

const char* pm(int s) { return s > 0 ? "+" : "-"; }

Coeff half_hbar(const Q& q) { return Coeff::hbar(1, q / 2); }

void add(RelationSet& rs, const std::string& label, const Element& e) { rs.relations.push_back({label, e}); }

}  // namespace

std::vector<Gen> minimalistic_catalog(const RootDatum& rd, bool with_htilde) {
    std::vector<Gen> c;
    for (int i : rd.node_labels()) {
        c.push_back(hgen(i, 0));
        c.push_back(hgen(i, 1));
        for (int r = 0; r <= 1; ++r) {
            c.push_back(xgen(rd, 1, i, r));
            c.push_back(xgen(rd, -1, i, r));
        }
        if (with_htilde) c.push_back(htilde(i, 1));
    }
    return c;
}

RelationSet kac_moody_relations(const RootDatum& rd) {
    RelationSet rs;
    rs.name = "kac-moody";
    rs.rd = rd;
    auto nodes = rd.node_labels();
    for (int i : nodes) {
        rs.catalog.push_back(hgen(i, 0));
        rs.catalog.push_back(xgen(rd, 1, i, 0));
        rs.catalog.push_back(xgen(rd, -1, i, 0));
    }
    for (int i : nodes)
        for (int j : nodes) add(rs, lab("hh", {i, j}), super_bracket(Hc(i), Hc(j)));
    for (int i : nodes)
        for (int j : nodes)
            for (int s : {1, -1}) {
                int a = rd.pair(i, j);
                add(rs, lab(std::string("hx") + pm(s), {i, j}),
                    super_bracket(Hc(i), X(rd, s, j)) - X(rd, s, j).scaled(Q(s * a)));
            }
    for (int i : nodes)
        for (int j : nodes) {
            Element e = super_bracket(X(rd, 1, i), X(rd, -1, j));
            if (i == j) e -= Hc(i);
            add(rs, lab("xpxm", {i, j}), e);
            Element f = super_bracket(X(rd, -1, i), X(rd, 1, j));
            if (i == j) f += Hc(i).scaled(Q(rd.root_parity(i) ? -1 : 1));
            add(rs, lab("xmxp", {i, j}), f);
        }
    for (int i : nodes)
        for (int j : nodes) {
            if (i == j) continue;
            int k = 1 + std::abs(rd.pair(i, j));
            for (int s : {1, -1})
                add(rs, lab(std::string("serre") + pm(s), {i, j}), ad_pow(X(rd, s, i), k, X(rd, s, j)));
        }
    for (int t : nodes) {
        if (!rd.root_parity(t)) continue;
        for (int s : {1, -1}) add(rs, lab(std::string("oddself") + pm(s), {t}), super_bracket(X(rd, s, t), X(rd, s, t)));
    }
    for (int t : nodes) {
        if (!rd.root_parity(t)) continue;
        int a = rd.prev_node(t), b = rd.next_node(t);
        if (a < 0 || b < 0 || a == b || rd.pair(a, b) != 0) continue;
        for (int s : {1, -1})
            add(rs, lab(std::string("quartic") + pm(s), {t}),
                super_bracket(super_bracket(X(rd, s, a), X(rd, s, t)), super_bracket(X(rd, s, t), X(rd, s, b))));
    }
    return rs;
}

RelationSet minimalistic_relations(const RootDatum& rd) {
    RelationSet rs;
    rs.name = "minimalistic";
    rs.rd = rd;
    rs.catalog = minimalistic_catalog(rd, true);
    auto nodes = rd.node_labels();
    // commuting Cartan currents
    for (int i : nodes)
        for (int r = 0; r <= 1; ++r)
            for (int j : nodes)
                for (int s = 0; s <= 1; ++s) {
                    if (std::make_pair(j, s) <= std::make_pair(i, r)) continue;
                    add(rs, lab("hh", {i, r, j, s}), super_bracket(Hc(i, r), Hc(j, s)));
                }
    for (int i : nodes)
        for (int j : nodes) {
            Element e = super_bracket(X(rd, 1, i), X(rd, -1, j));
            if (i == j) e -= Hc(i);
            add(rs, lab("xpxm", {i, j}), e);
        }
    for (int i : nodes)
        for (int j : nodes) {
            Element a = super_bracket(X(rd, 1, i, 1), X(rd, -1, j, 0));
            Element b = super_bracket(X(rd, 1, i, 0), X(rd, -1, j, 1));
            if (i == j) a -= Hc(i, 1), b -= Hc(i, 1);
            add(rs, lab("xpxm1a", {i, j}), a);
            add(rs, lab("xpxm1b", {i, j}), b);
        }
    for (int i : nodes)
        for (int j : nodes)
            for (int r = 0; r <= 1; ++r)
                for (int s : {1, -1}) {
                    int a = rd.pair(i, j);
                    add(rs, lab(std::string("hx") + pm(s), {i, j, r}),
                        super_bracket(Hc(i), X(rd, s, j, r)) - X(rd, s, j, r).scaled(Q(s * a)));
                }
    for (int i : nodes)
        for (int j : nodes)
            for (int s : {1, -1}) {
                int a = rd.pair(i, j);
                Element e = super_bracket(X(rd, s, i, 1), X(rd, s, j, 0)) - super_bracket(X(rd, s, i, 0), X(rd, s, j, 1));
                e -= anti_bracket(X(rd, s, i), X(rd, s, j)).scaled(half_hbar(Q(s * a)));
                add(rs, lab(std::string("shift") + pm(s), {i, j}), e);
            }
    for (int i : nodes)
        for (int j : nodes)
            for (int s : {1, -1}) {
                int a = rd.pair(i, j);
                add(rs, lab(std::string("htx") + pm(s), {i, j}),
                    super_bracket(Ht(i), X(rd, s, j)) - X(rd, s, j, 1).scaled(Q(s * a)));
            }
    for (int i : nodes)
        for (int j : nodes) {
            if (i == j) continue;
            int k = 1 + std::abs(rd.pair(i, j));
            for (int s : {1, -1})
                add(rs, lab(std::string("serre") + pm(s), {i, j}), ad_pow(X(rd, s, i), k, X(rd, s, j)));
        }
    for (int t : nodes) {
        if (!rd.root_parity(t)) continue;
        for (int s : {1, -1}) add(rs, lab(std::string("oddself") + pm(s), {t}), super_bracket(X(rd, s, t), X(rd, s, t)));
    }
    for (int t : nodes) {
        if (!rd.root_parity(t)) continue;
        int a = rd.prev_node(t), b = rd.next_node(t);
        if (a < 0 || b < 0 || a == b || rd.pair(a, b) != 0) continue;
        for (int s : {1, -1})
            add(rs, lab(std::string("quartic") + pm(s), {t}),
                super_bracket(super_bracket(X(rd, s, a), X(rd, s, t)), super_bracket(X(rd, s, t), X(rd, s, b))));
    }
    return rs;
}

RelationSet drinfeld_relations_bounded(const RootDatum& rd, int R, int rs_max) {
    if (R < 1) throw Error("Drinfeld level cutoff must be >= 1");
    RelationSet rs;
    rs.name = "drinfeld";
    rs.rd = rd;
    auto nodes = rd.node_labels();
    for (int i : nodes)
        for (int r = 0; r <= R; ++r) {
            rs.catalog.push_back(hgen(i, r));
            rs.catalog.push_back(xgen(rd, 1, i, r));
            rs.catalog.push_back(xgen(rd, -1, i, r));
        }
    auto ok = [&](int r, int s) { return r + s <= rs_max; };
    for (int i : nodes)
        for (int r = 0; r <= R; ++r)
            for (int j : nodes)
                for (int s = 0; s <= R; ++s) {
                    if (std::make_pair(j, s) <= std::make_pair(i, r) || !ok(r, s)) continue;
                    add(rs, lab("d-hh", {i, r, j, s}), super_bracket(Hc(i, r), Hc(j, s)));
                }
    for (int i : nodes)
        for (int j : nodes)
            for (int s = 0; s <= R; ++s)
                for (int sg : {1, -1}) {
                    if (!ok(0, s)) continue;
                    add(rs, lab(std::string("d-hx") + pm(sg), {i, j, s}),
                        super_bracket(Hc(i), X(rd, sg, j, s)) - X(rd, sg, j, s).scaled(Q(sg * rd.pair(i, j))));
                }
    for (int i : nodes)
        for (int j : nodes)
            for (int r = 0; r <= R; ++r)
                for (int s = 0; s <= R; ++s) {
                    if (!ok(r, s)) continue;
                    if (i == j && r + s > R) continue;
                    Element e = super_bracket(X(rd, 1, i, r), X(rd, -1, j, s));
                    if (i == j) e -= Hc(i, r + s);
                    add(rs, lab("d-xpxm", {i, r, j, s}), e);
                }
    for (int i : nodes)
        for (int j : nodes)
            for (int r = 0; r + 1 <= R; ++r)
                for (int s = 0; s + 1 <= R; ++s)
                    for (int sg : {1, -1}) {
                        if (!ok(r, s)) continue;
                        int a = rd.pair(i, j);
                        Element e = super_bracket(Hc(i, r + 1), X(rd, sg, j, s)) - super_bracket(Hc(i, r), X(rd, sg, j, s + 1));
                        e -= anti_bracket(Hc(i, r), X(rd, sg, j, s)).scaled(half_hbar(Q(sg * a)));
                        add(rs, lab(std::string("d-hshift") + pm(sg), {i, r, j, s}), e);
                    }
    for (int i : nodes)
        for (int j : nodes)
            for (int r = 0; r + 1 <= R; ++r)
                for (int s = 0; s + 1 <= R; ++s)
                    for (int sg : {1, -1}) {
                        if (!ok(r, s)) continue;
                        int a = rd.pair(i, j);
                        Element e = super_bracket(X(rd, sg, i, r + 1), X(rd, sg, j, s)) -
                                    super_bracket(X(rd, sg, i, r), X(rd, sg, j, s + 1));
                        e -= anti_bracket(X(rd, sg, i, r), X(rd, sg, j, s)).scaled(half_hbar(Q(sg * a)));
                        add(rs, lab(std::string("d-xshift") + pm(sg), {i, r, j, s}), e);
                    }
    // Symmetrized Serre; levels r_1..r_k with r_1 <= .. <= r_k, total level bounded by rs_max.
    for (int i : nodes)
        for (int j : nodes) {
            if (i == j) continue;
            int k = 1 + std::abs(rd.pair(i, j));
            std::vector<int> lv(k, 0);
            std::function<void(int, int)> rec = [&](int pos, int lo) {
                if (pos == k) {
                    int tot = 0;
                    for (int v : lv) tot += v;
                    for (int s = 0; s <= R; ++s) {
                        if (tot + s > rs_max) continue;
                        for (int sg : {1, -1}) {
                            Element sum;
                            std::vector<int> perm = lv;
                            do {
                                Element e = X(rd, sg, j, s);
                                for (int p = k - 1; p >= 0; --p) e = super_bracket(X(rd, sg, i, perm[p]), e);
                                sum += e;
                            } while (std::next_permutation(perm.begin(), perm.end()));
                            std::string l = std::string("d-serre") + pm(sg) + "(" + std::to_string(i) + "," +
                                            std::to_string(j) + ";";
                            for (int v : lv) l += std::to_string(v);
                            l += "," + std::to_string(s) + ")";
                            add(rs, l, sum);
                        }
                    }
                    return;
                }
                for (int v = lo; v <= R; ++v) {
                    lv[pos] = v;
                    rec(pos + 1, v);
                }
            };
            rec(0, 0);
        }
    for (int t : nodes) {
        if (!rd.root_parity(t)) continue;
        for (int r = 0; r <= R; ++r)
            for (int s = r; s <= R; ++s)
                for (int sg : {1, -1}) {
                    if (!ok(r, s)) continue;
                    add(rs, lab(std::string("d-oddself") + pm(sg), {t, r, s}),
                        super_bracket(X(rd, sg, t, r), X(rd, sg, t, s)));
                }
    }
    for (int t : nodes) {
        if (!rd.root_parity(t)) continue;
        int a = rd.prev_node(t), b = rd.next_node(t);
        if (a < 0 || b < 0 || a == b || rd.pair(a, b) != 0) continue;
        for (int r = 0; r <= R; ++r)
            for (int s = 0; s <= R; ++s)
                for (int sg : {1, -1}) {
                    if (!ok(r, s)) continue;
                    add(rs, lab(std::string("d-quartic") + pm(sg), {t, r, s}),
                        super_bracket(super_bracket(X(rd, sg, a, r), X(rd, sg, t)),
                                      super_bracket(X(rd, sg, t), X(rd, sg, b, s))));
                }
    }
    return rs;
}

RelationSet drinfeld_relations(const RootDatum& rd, int R) { return drinfeld_relations_bounded(rd, R, 2 * R); }

// ---------------------------------------------------------------- reflections

OddReflectionSigns OddReflectionSigns::paper_literal() {
    OddReflectionSigns s;
    s.self_plus = -1;
    s.self_minus = -1;
    s.self1_plus_corr = 1;
    s.self1_minus_corr = 1;
    s.ht_self_corr = 0;
    s.ht_neighbor_fixed = 1;
    s.solve_neighbor_minus = false;
    return s;
}

namespace {

void set_h1(GeneratorMap& m, int j) {
    // h(j,1) = ht(j,1) + (hbar/2) h(j,0)^2
    const Element& t = m.images.at(htilde(j, 1));
    const Element& h = m.images.at(hgen(j, 0));
    m.images[hgen(j, 1)] = t + (h * h).scaled(half_hbar(1));
}

}  // namespace

QuantumReflection quantum_reflection(const RootDatum& rd, int i, const OddReflectionSigns& odd,
                                     const EvenReflectionSigns& even) {
    auto rr = reflect_simple(rd, i);
    QuantumReflection q;
    q.source = rd;
    q.target = rr.new_datum;
    q.kind = rr.kind;
    const RootDatum& t = q.target;
    GeneratorMap& m = q.map;
    auto src = [&](int s, int j, int r) { return xgen(rd, s, j, r); };

    if (rr.kind == ReflectionKind::Even) {
        int aii = rd.pair(i, i);
        int s = aii / 2;
        for (int j : rd.node_labels()) {
            int a = rd.pair(i, j);
            if (j == i) {
                m.images[src(1, j, 0)] = X(t, -1, i).scaled(Q(-s));
                m.images[src(-1, j, 0)] = X(t, 1, i).scaled(Q(-s));
                m.images[hgen(j, 0)] = -Hc(i);
                if (s > 0) {
                    m.images[src(1, j, 1)] = -X(t, -1, i, 1) + anti_bracket(Hc(i), X(t, -1, i)).scaled(half_hbar(1));
                    m.images[src(-1, j, 1)] = -X(t, 1, i, 1) + anti_bracket(Hc(i), X(t, 1, i)).scaled(half_hbar(1));
                    m.images[htilde(j, 1)] = -Ht(i) - anti_bracket(X(t, 1, i), X(t, -1, i)).scaled(Coeff::hbar(1));
                } else {
                    int c = even.mirror_self1_corr;
                    m.images[src(1, j, 1)] = X(t, -1, i, 1) + anti_bracket(Hc(i), X(t, -1, i)).scaled(half_hbar(c));
                    m.images[src(-1, j, 1)] = X(t, 1, i, 1) + anti_bracket(Hc(i), X(t, 1, i)).scaled(half_hbar(c));
                    m.images[htilde(j, 1)] =
                        -Ht(i) + anti_bracket(X(t, 1, i), X(t, -1, i)).scaled(Coeff::hbar(1, even.mirror_ht_self_corr));
                }
            } else if (a != 0) {
                if (a != -s) throw Error("Cartan entry outside the even reflection table");
                int cm = -s;
                for (int r = 0; r <= 1; ++r) {
                    m.images[src(1, j, r)] = super_bracket(X(t, 1, i), X(t, 1, j, r));
                    m.images[src(-1, j, r)] = super_bracket(X(t, -1, i), X(t, -1, j, r)).scaled(Q(cm));
                }
                m.images[hgen(j, 0)] = Hc(i) + Hc(j);
                Q corr = s > 0 ? Q(1) : Q(even.mirror_ht_neighbor);
                m.images[htilde(j, 1)] =
                    Ht(j) + Ht(i) + anti_bracket(X(t, 1, i), X(t, -1, i)).scaled(half_hbar(corr));
            } else {
                for (int r = 0; r <= 1; ++r)
                    for (int sg : {1, -1}) m.images[src(sg, j, r)] = X(t, sg, j, r);
                m.images[hgen(j, 0)] = Hc(j);
                m.images[htilde(j, 1)] = Ht(j);
            }
            set_h1(m, j);
        }
        return q;
    }

    // Odd reflection: node labels carry over, beta_j sits at label j of the target.
    Realization real = realize(t, t.affine ? 2 : 0);
    for (int j : rd.node_labels()) {
        int a = rd.pair(i, j);
        if (j == i) {
            m.images[src(1, j, 0)] = X(t, -1, i).scaled(Q(odd.self_plus));
            m.images[src(-1, j, 0)] = X(t, 1, i).scaled(Q(odd.self_minus));
            m.images[hgen(j, 0)] = -Hc(i);
            m.images[src(1, j, 1)] = X(t, -1, i, 1).scaled(Q(odd.self_plus)) +
                                     anti_bracket(Hc(i), X(t, -1, i)).scaled(half_hbar(odd.self1_plus_corr));
            m.images[src(-1, j, 1)] = X(t, 1, i, 1).scaled(Q(odd.self_minus)) +
                                      anti_bracket(Hc(i), X(t, 1, i)).scaled(half_hbar(odd.self1_minus_corr));
            m.images[htilde(j, 1)] =
                -Ht(i) + anti_bracket(X(t, 1, i), X(t, -1, i)).scaled(Coeff::hbar(1, odd.ht_self_corr));
        } else if (a != 0) {
            int cp = rd.root_parity(j) ? -1 : 1;
            Element ep = super_bracket(X(t, 1, i), X(t, 1, j));
            Element em = super_bracket(X(t, -1, i), X(t, -1, j));
            Q cm = -cp;
            if (odd.solve_neighbor_minus) {
                auto lhs = eval(real, super_bracket(ep.scaled(Q(cp)), em));
                auto rhs = eval(real, Hc(i) + Hc(j));
                // lhs = cm^{-1} * rhs entrywise
                Q ratio = 0;
                for (int x = 0; x < lhs.dim() && ratio == 0; ++x)
                    for (int y = 0; y < lhs.dim() && ratio == 0; ++y)
                        if (!rhs.at(x, y).is_zero()) ratio = rhs.at(x, y).c.begin()->second / lhs.at(x, y).c.at(rhs.at(x, y).c.begin()->first);
                cm = ratio;
            }
            for (int r = 0; r <= 1; ++r) {
                m.images[src(1, j, r)] = super_bracket(X(t, 1, i), X(t, 1, j, r)).scaled(Q(cp));
                m.images[src(-1, j, r)] = super_bracket(X(t, -1, i), X(t, -1, j, r)).scaled(cm);
            }
            m.images[hgen(j, 0)] = Hc(i) + Hc(j);
            int c = odd.ht_neighbor_fixed ? odd.ht_neighbor_fixed : a;
            m.images[htilde(j, 1)] = Ht(j) + Ht(i) + anti_bracket(X(t, 1, i), X(t, -1, i)).scaled(half_hbar(c));
        } else {
            for (int r = 0; r <= 1; ++r)
                for (int sg : {1, -1}) m.images[src(sg, j, r)] = X(t, sg, j, r);
            m.images[hgen(j, 0)] = Hc(j);
            m.images[htilde(j, 1)] = Ht(j);
        }
        set_h1(m, j);
    }
    return q;
}

ClassicalReflection classical_reflection_map(const RootDatum& rd, int i) {
    if (rd.root_parity(i) == 0) throw Error("classical reflection map needs an odd root");
    RootDatum rd1 = reflect_simple(rd, i).new_datum;
    auto q = quantum_reflection(rd1, i);
    ClassicalReflection c;
    c.source = rd1;
    c.target = q.target;
    for (auto& [g, img] : q.map.images)
        if (g.level == 0 && g.kind != Kind::Htilde) c.map.images[g] = img;
    return c;
}

GeneratorMap drinfeld_lift(const RootDatum& rd, int R, bool literal_h) {
    if (R < 1) throw Error("lift level must be >= 1");
    GeneratorMap m;
    for (int i : rd.node_labels()) {
        for (int r = 0; r <= 1; ++r) {
            m.images[hgen(i, r)] = Hc(i, r);
            for (int s : {1, -1}) m.images[xgen(rd, s, i, r)] = X(rd, s, i, r);
        }
    }
    for (int i : rd.node_labels()) {
        int j = rd.next_node(i);
        if (j < 0) j = rd.prev_node(i);
        if (j < 0) throw Error("node without neighbour");
        int a = rd.pair(i, j);
        if (a == 0) throw Error("vanishing pairing between consecutive roots");
        for (int k = 1; k < R; ++k)
            for (int s : {1, -1})
                m.images[xgen(rd, s, i, k + 1)] =
                    super_bracket(Ht(j), m.images.at(xgen(rd, s, i, k))).scaled(Q(Q(s) / a));
        for (int k = 1; k < R; ++k) {
            int lvl = literal_h ? k : k + 1;
            m.images[hgen(i, k + 1)] = super_bracket(m.images.at(xgen(rd, 1, i, lvl)), X(rd, -1, i, 0));
        }
    }
    return m;
}

SerreBlock serre_block_determinant(const RootDatum& rd, int j, const std::array<int, 3>& rows) {
    int a = rd.prev_node(j), b = rd.next_node(j);
    if (a < 0 || b < 0 || a == b || a == j || b == j) throw Error("serre block needs three distinct consecutive nodes");
    for (int r : rows)
        if (!rd.has_node(r)) throw Error("invalid row index " + std::to_string(r));
    std::array<int, 3> cols{a, j, b};
    SerreBlock sb;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) sb.matrix[x][y] = rd.pair(rows[x], cols[y]);
    auto& M = sb.matrix;
    sb.determinant = static_cast<long>(M[0][0]) * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                     static_cast<long>(M[0][1]) * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                     static_cast<long>(M[0][2]) * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    return sb;
}

std::string map_to_json(const GeneratorMap& m) {
    nlohmann::ordered_json j;
    j["schema"] = "syang/1";
    j["images"] = nlohmann::ordered_json::array();
    for (auto& [g, e] : m.images) j["images"].push_back({{"generator", g.to_string()}, {"image", e.to_string()}});
    return j.dump(2);
}

}  // namespace syang
