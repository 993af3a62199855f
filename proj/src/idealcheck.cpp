#include "syang/idealcheck.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "syang/errors.hpp"

namespace syang {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

constexpr u64 P = (u64(1) << 61) - 1;
constexpr int LETTER_BITS = 6;
constexpr int MAX_L = 8;

u64 addm(u64 a, u64 b) {
    u64 s = a + b;
    return s >= P ? s - P : s;
}
u64 mulm(u64 a, u64 b) {
    unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
    u64 lo = static_cast<u64>(x & P), hi = static_cast<u64>(x >> 61);
    return addm(lo, hi);
}
u64 powm(u64 a, u64 e) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulm(r, a);
        a = mulm(a, a);
        e >>= 1;
    }
    return r;
}
u64 invm(u64 a) { return powm(a, P - 2); }

u64 to_mod(const Q& q) {
    mpz_class n = q.get_num() % mpz_class(static_cast<unsigned long>(P));
    if (n < 0) n += static_cast<unsigned long>(P);
    mpz_class d = q.get_den() % mpz_class(static_cast<unsigned long>(P));
    return mulm(n.get_ui(), invm(d.get_ui()));
}

// Packed word: letters in base 64, first letter most significant.
struct PWord {
    u64 bits = 0;
    int len = 0;
    int deg = 0;
    u64 key() const { return (u64(deg) << 56) | (u64(len) << 50) | bits; }
};

PWord concat(const PWord& a, const PWord& b) {
    return {(a.bits << (LETTER_BITS * b.len)) | b.bits, a.len + b.len, a.deg + b.deg};
}

// Weight in the free lattice indexed by node position, one signed byte per node.
using WKey = std::string;

WKey wadd(const WKey& a, const WKey& b) {
    WKey r = a;
    for (size_t k = 0; k < r.size(); ++k) r[k] = static_cast<char>(r[k] + b[k]);
    return r;
}
WKey wsub(const WKey& a, const WKey& b) {
    WKey r = a;
    for (size_t k = 0; k < r.size(); ++k) r[k] = static_cast<char>(r[k] - b[k]);
    return r;
}

struct PreRel {
    std::string label;
    Element rewritten;
    std::vector<std::pair<PWord, Q>> terms;
    std::vector<std::pair<PWord, u64>> mterms;
    int e = 0;
    WKey weight;
    int maxlen = 0;
    u64 letters = 0;  // bitmask over the alphabet
};

struct RowRef {
    u32 rel;
    PWord l, r;
    int e;
};

struct ModPivot {
    u32 row;
    std::vector<std::pair<u64, u64>> v;
    std::vector<u32> deps;
};

struct Block {
    std::vector<RowRef> rows;
    std::vector<ModPivot> pivots;
    std::unordered_map<u64, u32> pivot_at;
};

struct QPivot {
    std::vector<std::pair<u64, Q>> v;
    std::map<u32, Q> comb;  // over block rows
};

// Sparse accumulator with descending key order.
template <class V>
struct Acc {
    std::unordered_map<u64, V> m;
    std::priority_queue<u64> heap;
    void add(u64 k, const V& v);
    bool pop(u64& k, V& v) {
        while (!heap.empty()) {
            k = heap.top();
            heap.pop();
            auto it = m.find(k);
            if (it == m.end()) continue;
            v = it->second;
            m.erase(it);
            return true;
        }
        return false;
    }
};

template <>
void Acc<u64>::add(u64 k, const u64& v) {
    auto [it, ins] = m.try_emplace(k, 0);
    it->second = addm(it->second, v);
    if (ins) heap.push(k);
}

template <>
void Acc<Q>::add(u64 k, const Q& v) {
    auto [it, ins] = m.try_emplace(k, 0);
    it->second += v;
    if (ins) heap.push(k);
}

}  // namespace

struct IdealEngine::Impl {
    RelationSet rs;
    RootDatum rd;
    std::vector<Gen> alphabet;
    std::map<Gen, int> letter_id;
    std::vector<int> letter_deg;
    std::vector<WKey> letter_weight;
    std::vector<PreRel> rels;
    std::map<std::tuple<u64, WKey, int, int>, std::unique_ptr<Block>> blocks;
    // (support, L, D) -> (len, deg, weight) -> words
    std::map<std::tuple<u64, int, int>, std::map<std::tuple<int, int, WKey>, std::vector<PWord>>> words_cache;
    size_t bytes = 0;
    size_t budget = size_t(1) << 30;

    // Drops every cached block once the rough footprint passes the budget; only between queries.
    void trim() {
        if (bytes <= budget) return;
        blocks.clear();
        words_cache.clear();
        bytes = 0;
    }

    explicit Impl(const RelationSet& r);

    WKey zero_weight() const { return WKey(rd.num_nodes(), 0); }

    PWord pack(const Word& w) const {
        PWord p;
        for (auto& g : w) {
            auto it = letter_id.find(g);
            if (it == letter_id.end()) throw Error("letter outside the engine alphabet: " + g.to_string());
            p.bits = (p.bits << LETTER_BITS) | u64(it->second + 1);
            p.len++;
            p.deg += letter_deg[it->second];
        }
        return p;
    }
    Word unpack(const PWord& p) const {
        Word w(p.len);
        u64 b = p.bits;
        for (int k = p.len - 1; k >= 0; --k) {
            w[k] = alphabet[(b & 63) - 1];
            b >>= LETTER_BITS;
        }
        return w;
    }
    WKey weight_of(const PWord& p) const {
        WKey w = zero_weight();
        u64 b = p.bits;
        for (int k = 0; k < p.len; ++k) {
            w = wadd(w, letter_weight[(b & 63) - 1]);
            b >>= LETTER_BITS;
        }
        return w;
    }
    u64 mask_of(const PWord& p) const {
        u64 m = 0, b = p.bits;
        for (int k = 0; k < p.len; ++k) {
            m |= u64(1) << ((b & 63) - 1);
            b >>= LETTER_BITS;
        }
        return m;
    }
    u64 support_mask(const std::vector<Gen>& s) const {
        u64 m = 0;
        for (auto& g : s) {
            auto it = letter_id.find(g);
            if (it == letter_id.end()) throw Error("support letter outside the engine alphabet: " + g.to_string());
            m |= u64(1) << it->second;
        }
        if (!m) throw Error("empty support");
        return m;
    }

    const std::map<std::tuple<int, int, WKey>, std::vector<PWord>>& words(u64 supp, int maxlen, int D);
    Block& block(u64 supp, const WKey& mu, int D, int L);
    void insert_row(Block& b, u32 idx);
    void row_terms_mod(const RowRef& r, Acc<u64>& acc, u64 scale) const;
    void row_terms_q(const RowRef& r, Acc<Q>& acc, const Q& scale) const;
    // Full reduction mod p; returns the remainder and the pivots used.
    std::vector<std::pair<u64, u64>> reduce_mod(const Block& b, const std::vector<std::pair<u64, u64>>& t,
                                               std::set<u32>* used) const;
    // Exact elimination over the dependency closure of `used`.
    std::vector<QPivot> exact_pivots(const Block& b, const std::set<u32>& used,
                                     std::unordered_map<u64, u32>& at) const;
    std::vector<std::pair<u64, Q>> reduce_exact(const std::vector<QPivot>& piv, const std::unordered_map<u64, u32>& at,
                                                const std::vector<std::pair<u64, Q>>& t, std::map<u32, Q>& comb) const;
    WitnessTerm witness_of(const Block& b, u32 row, const Q& c, int target_deg) const;
    Element expand_term(const WitnessTerm& w) const;
};

IdealEngine::Impl::Impl(const RelationSet& r) : rs(r), rd(r.rd) {
    for (int i : rd.node_labels()) {
        int p = rd.root_parity(i);
        for (Gen g : {hgen(i, 0), htilde(i, 1), xplus(i, 0, p), xminus(i, 0, p), xplus(i, 1, p), xminus(i, 1, p)})
            alphabet.push_back(g);
    }
    std::sort(alphabet.begin(), alphabet.end());
    if (alphabet.size() > 63) throw Error("too many nodes for the ideal engine");
    for (size_t k = 0; k < alphabet.size(); ++k) {
        const Gen& g = alphabet[k];
        letter_id[g] = static_cast<int>(k);
        letter_deg.push_back(g.degree());
        WKey w = zero_weight();
        if (g.kind == Kind::Xplus) w[rd.node_pos(g.root)] = 1;
        if (g.kind == Kind::Xminus) w[rd.node_pos(g.root)] = -1;
        letter_weight.push_back(w);
    }
    for (auto& rel : rs.relations) {
        PreRel pr;
        pr.label = rel.label;
        pr.rewritten = rewrite_h1(rel.element);
        if (pr.rewritten.is_zero()) continue;
        std::map<u64, std::pair<PWord, Q>> acc;
        bool first = true;
        for (auto& [w, c] : pr.rewritten.terms()) {
            PWord p = pack(w);
            for (int k = 0; k <= c.degree(); ++k) {
                if (c.at(k) == 0) continue;
                int e = p.deg + k;
                WKey wt = weight_of(p);
                if (first) pr.e = e, pr.weight = wt, first = false;
                if (e != pr.e || wt != pr.weight) throw Error("relation " + rel.label + " is not homogeneous");
                auto& slot = acc[p.key()];
                slot.first = p;
                slot.second += c.at(k);
            }
            pr.maxlen = std::max(pr.maxlen, p.len);
            pr.letters |= mask_of(p);
        }
        for (auto& [k, pq] : acc)
            if (pq.second != 0) {
                pr.terms.push_back(pq);
                pr.mterms.emplace_back(pq.first, to_mod(pq.second));
            }
        if (!pr.terms.empty()) rels.push_back(std::move(pr));
    }
}

const std::map<std::tuple<int, int, WKey>, std::vector<PWord>>& IdealEngine::Impl::words(u64 supp, int maxlen, int D) {
    auto key = std::make_tuple(supp, maxlen, D);
    auto it = words_cache.find(key);
    if (it != words_cache.end()) return it->second;
    auto& out = words_cache[key];
    std::vector<int> letters;
    for (size_t k = 0; k < alphabet.size(); ++k)
        if (supp >> k & 1) letters.push_back(static_cast<int>(k));
    std::vector<std::pair<PWord, WKey>> layer{{PWord{}, zero_weight()}};
    out[{0, 0, zero_weight()}].push_back(PWord{});
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<std::pair<PWord, WKey>> next;
        for (auto& [p, w] : layer)
            for (int l : letters) {
                if (p.deg + letter_deg[l] > D) continue;
                PWord q{(p.bits << LETTER_BITS) | u64(l + 1), len, p.deg + letter_deg[l]};
                WKey qw = wadd(w, letter_weight[l]);
                out[{len, q.deg, qw}].push_back(q);
                next.emplace_back(q, qw);
            }
        layer = std::move(next);
    }
    return out;
}

void IdealEngine::Impl::row_terms_mod(const RowRef& r, Acc<u64>& acc, u64 scale) const {
    for (auto& [w, v] : rels[r.rel].mterms) acc.add(concat(concat(r.l, w), r.r).key(), mulm(v, scale));
}

void IdealEngine::Impl::row_terms_q(const RowRef& r, Acc<Q>& acc, const Q& scale) const {
    for (auto& [w, v] : rels[r.rel].terms) acc.add(concat(concat(r.l, w), r.r).key(), v * scale);
}

void IdealEngine::Impl::insert_row(Block& b, u32 idx) {
    Acc<u64> acc;
    row_terms_mod(b.rows[idx], acc, 1);
    std::vector<u32> deps;
    u64 k, v;
    while (acc.pop(k, v)) {
        if (v == 0) continue;
        auto it = b.pivot_at.find(k);
        if (it != b.pivot_at.end()) {
            const auto& pv = b.pivots[it->second];
            u64 f = P - v;
            for (size_t q = 1; q < pv.v.size(); ++q) acc.add(pv.v[q].first, mulm(f, pv.v[q].second));
            deps.push_back(it->second);
            continue;
        }
        ModPivot np;
        np.row = idx;
        u64 inv = invm(v);
        np.v.emplace_back(k, 1);
        u64 k2, v2;
        while (acc.pop(k2, v2))
            if (v2) np.v.emplace_back(k2, mulm(v2, inv));
        np.deps = std::move(deps);
        b.pivot_at[k] = static_cast<u32>(b.pivots.size());
        b.pivots.push_back(std::move(np));
        return;
    }
}

Block& IdealEngine::Impl::block(u64 supp, const WKey& mu, int D, int L) {
    auto key = std::make_tuple(supp, mu, D, L);
    auto it = blocks.find(key);
    if (it != blocks.end()) return *it->second;
    auto bp = std::make_unique<Block>();
    Block& b = *bp;
    int minlen = L + 1;
    std::vector<u32> adm;
    for (u32 k = 0; k < rels.size(); ++k)
        if ((rels[k].letters & ~supp) == 0 && rels[k].maxlen <= L && rels[k].e <= D) {
            adm.push_back(k);
            minlen = std::min(minlen, rels[k].maxlen);
        }
    if (!adm.empty()) {
        const auto& W = words(supp, L - minlen, D);
        for (u32 k : adm) {
            const PreRel& pr = rels[k];
            int room = L - pr.maxlen, droom = D - pr.e;
            WKey rest = wsub(mu, pr.weight);
            for (auto& [lk, lws] : W) {
                auto& [ll, dl, wl] = lk;
                if (ll > room || dl > droom) continue;
                WKey need = wsub(rest, wl);
                for (int lr = 0; lr + ll <= room; ++lr)
                    for (int dr = 0; dr + dl <= droom; ++dr) {
                        auto rit = W.find({lr, dr, need});
                        if (rit == W.end()) continue;
                        for (auto& l : lws)
                            for (auto& r : rit->second) b.rows.push_back({k, l, r, pr.e + dl + dr});
                    }
            }
        }
    }
    for (u32 r = 0; r < b.rows.size(); ++r) insert_row(b, r);
    bytes += b.rows.size() * (sizeof(RowRef) + 48);
    for (auto& p : b.pivots) bytes += sizeof(ModPivot) + p.v.size() * 16 + p.deps.size() * 4;
    blocks[key] = std::move(bp);
    return b;
}

std::vector<std::pair<u64, u64>> IdealEngine::Impl::reduce_mod(const Block& b, const std::vector<std::pair<u64, u64>>& t,
                                                               std::set<u32>* used) const {
    Acc<u64> acc;
    for (auto& [k, v] : t) acc.add(k, v);
    std::vector<std::pair<u64, u64>> rem;
    u64 k, v;
    while (acc.pop(k, v)) {
        if (v == 0) continue;
        auto it = b.pivot_at.find(k);
        if (it == b.pivot_at.end()) {
            rem.emplace_back(k, v);
            continue;
        }
        const auto& pv = b.pivots[it->second];
        u64 f = P - v;
        for (size_t q = 1; q < pv.v.size(); ++q) acc.add(pv.v[q].first, mulm(f, pv.v[q].second));
        if (used) used->insert(it->second);
    }
    return rem;
}

std::vector<QPivot> IdealEngine::Impl::exact_pivots(const Block& b, const std::set<u32>& used,
                                                    std::unordered_map<u64, u32>& at) const {
    std::set<u32> closure;
    std::vector<u32> stack(used.begin(), used.end());
    while (!stack.empty()) {
        u32 p = stack.back();
        stack.pop_back();
        if (!closure.insert(p).second) continue;
        for (u32 d : b.pivots[p].deps) stack.push_back(d);
    }
    std::vector<QPivot> piv;
    for (u32 p : closure) {
        u32 row = b.pivots[p].row;
        Acc<Q> acc;
        row_terms_q(b.rows[row], acc, 1);
        std::map<u32, Q> comb{{row, Q(1)}};
        u64 k;
        Q v;
        while (acc.pop(k, v)) {
            if (v == 0) continue;
            auto it = at.find(k);
            if (it != at.end()) {
                const QPivot& pv = piv[it->second];
                for (size_t q = 1; q < pv.v.size(); ++q) acc.add(pv.v[q].first, -v * pv.v[q].second);
                for (auto& [r, c] : pv.comb) {
                    Q& slot = comb[r];
                    slot -= v * c;
                    if (slot == 0) comb.erase(r);
                }
                continue;
            }
            QPivot np;
            Q inv = 1 / v;
            np.v.emplace_back(k, Q(1));
            u64 k2;
            Q v2;
            while (acc.pop(k2, v2))
                if (v2 != 0) np.v.emplace_back(k2, v2 * inv);
            for (auto& [r, c] : comb) np.comb[r] = c * inv;
            at[k] = static_cast<u32>(piv.size());
            piv.push_back(std::move(np));
            break;
        }
    }
    return piv;
}

std::vector<std::pair<u64, Q>> IdealEngine::Impl::reduce_exact(const std::vector<QPivot>& piv,
                                                               const std::unordered_map<u64, u32>& at,
                                                               const std::vector<std::pair<u64, Q>>& t,
                                                               std::map<u32, Q>& comb) const {
    Acc<Q> acc;
    for (auto& [k, v] : t) acc.add(k, v);
    std::vector<std::pair<u64, Q>> rem;
    u64 k;
    Q v;
    while (acc.pop(k, v)) {
        if (v == 0) continue;
        auto it = at.find(k);
        if (it == at.end()) {
            rem.emplace_back(k, v);
            continue;
        }
        const QPivot& pv = piv[it->second];
        for (size_t q = 1; q < pv.v.size(); ++q) acc.add(pv.v[q].first, -v * pv.v[q].second);
        for (auto& [r, c] : pv.comb) {
            Q& slot = comb[r];
            slot += v * c;
            if (slot == 0) comb.erase(r);
        }
    }
    return rem;
}

WitnessTerm IdealEngine::Impl::witness_of(const Block& b, u32 row, const Q& c, int target_deg) const {
    const RowRef& r = b.rows[row];
    if (r.e > target_deg) throw Error("witness row above the target degree");
    return {Coeff::hbar(target_deg - r.e, c), unpack(r.l), rels[r.rel].label, unpack(r.r)};
}

Element IdealEngine::Impl::expand_term(const WitnessTerm& w) const {
    const PreRel* pr = nullptr;
    for (auto& r : rels)
        if (r.label == w.label) pr = &r;
    if (!pr) throw Error("unknown relation label in witness: " + w.label);
    return (Element(w.left) * pr->rewritten * Element(w.right)).scaled(w.c);
}

// ---------------------------------------------------------------- public surface

Element rewrite_h1(const Element& a) {
    Element out;
    for (auto& [w, c] : a.terms()) {
        Element term = Element::one();
        for (auto& g : w) {
            if (g.kind == Kind::H && g.level == 1)
                term = term * (Element(htilde(g.root, 1)) + (Element(hgen(g.root, 0)) * Element(hgen(g.root, 0)))
                                                                .scaled(Coeff::hbar(1, Q(1, 2))));
            else
                term = term * Element(g);
        }
        out += term.scaled(c);
    }
    return out;
}

TensorElement rewrite_h1(const TensorElement& a) {
    TensorElement out(a.arity());
    for (auto& [tw, c] : a.terms()) {
        std::vector<Element> f;
        for (auto& w : tw) f.push_back(rewrite_h1(Element(w)));
        out += TensorElement::pure(f).scaled(c);
    }
    return out;
}

std::string Verdict::witness_text() const {
    std::ostringstream os;
    bool first = true;
    for (auto& w : witness) {
        if (!first) os << " + ";
        first = false;
        os << "(" << w.c.to_string() << ")*" << word_to_string(w.left) << "*<" << w.label << ">*"
           << word_to_string(w.right);
    }
    return os.str();
}

IdealEngine::IdealEngine(const RelationSet& rs) : impl_(std::make_unique<Impl>(rs)) {}
IdealEngine::~IdealEngine() = default;

const RelationSet& IdealEngine::relations() const { return impl_->rs; }

void IdealEngine::set_cache_budget(size_t bytes) { impl_->budget = bytes; }

std::vector<Gen> IdealEngine::node_letters(const std::vector<int>& nodes) const {
    std::vector<Gen> out;
    for (auto& g : impl_->alphabet)
        if (std::find(nodes.begin(), nodes.end(), g.root) != nodes.end()) out.push_back(g);
    return out;
}

Element IdealEngine::expand(const std::vector<WitnessTerm>& w) const {
    Element s;
    for (auto& t : w) s += impl_->expand_term(t);
    return s;
}

TensorElement IdealEngine::expand(const std::vector<TensorWitnessTerm>& w, int arity) const {
    TensorElement s(arity);
    for (auto& t : w) {
        std::vector<Element> f = t.factors;
        f[t.slot] = impl_->expand_term(t.row);
        s += TensorElement::pure(f);
    }
    return s;
}

Verdict IdealEngine::is_member(const Element& a, const std::vector<Gen>& support, int L) {
    Impl& I = *impl_;
    I.trim();
    if (L < 1 || L > MAX_L) throw Error("word length bound must lie in 1.." + std::to_string(MAX_L));
    Verdict v;
    v.support = support;
    v.L = L;
    u64 supp = I.support_mask(support);
    Element rw = rewrite_h1(a);
    if (rw.is_zero()) {
        v.verdict = "member";
        return v;
    }
    // components keyed by (weight, degree)
    std::map<std::pair<WKey, int>, std::map<u64, std::pair<PWord, Q>>> comps;
    for (auto& [w, c] : rw.terms()) {
        PWord p = I.pack(w);
        if ((I.mask_of(p) & ~supp) != 0) {
            v.verdict = "inconclusive";
            v.detail = "element uses letters outside the support";
            return v;
        }
        if (p.len > L) {
            v.verdict = "inconclusive";
            v.detail = "element has words longer than L";
            return v;
        }
        WKey wt = I.weight_of(p);
        for (int k = 0; k <= c.degree(); ++k) {
            if (c.at(k) == 0) continue;
            auto& slot = comps[{wt, p.deg + k}][p.key()];
            slot.first = p;
            slot.second += c.at(k);
        }
    }
    for (auto& [ck, terms] : comps) {
        auto& [mu, d] = ck;
        Block& b = I.block(supp, mu, d, L);
        std::vector<std::pair<u64, u64>> tm;
        std::vector<std::pair<u64, Q>> tq;
        for (auto& [k, pq] : terms) {
            if (pq.second == 0) continue;
            tm.emplace_back(k, to_mod(pq.second));
            tq.emplace_back(k, pq.second);
        }
        std::set<u32> used;
        if (!I.reduce_mod(b, tm, &used).empty()) {
            v.verdict = "not-found-at-bound";
            v.witness.clear();
            v.detail = "no combination within the bound (" + std::to_string(b.rows.size()) + " rows, rank " +
                       std::to_string(b.pivots.size()) + ")";
            return v;
        }
        std::unordered_map<u64, u32> at;
        auto piv = I.exact_pivots(b, used, at);
        std::map<u32, Q> comb;
        if (!I.reduce_exact(piv, at, tq, comb).empty()) {
            v.verdict = "not-found-at-bound";
            v.witness.clear();
            v.detail = "modular screen passed but the exact solve did not";
            return v;
        }
        for (auto& [row, c] : comb) v.witness.push_back(I.witness_of(b, row, c, d));
    }
    if (!(expand(v.witness) == rw)) throw Error("internal: witness does not re-expand to the element");
    v.verdict = "member";
    return v;
}

std::vector<std::vector<int>> support_ladder(const RootDatum& rd, std::vector<int> nodes, const IdealOptions& opt) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<std::vector<int>> out{nodes};
    for (int ring = 0; ring < opt.neighbor_rings; ++ring) {
        std::set<int> s(out.back().begin(), out.back().end());
        for (int n : out.back())
            for (int m : rd.neighbours(n)) s.insert(m);
        std::vector<int> nx(s.begin(), s.end());
        if (nx == out.back()) break;
        out.push_back(nx);
    }
    if (!opt.escalate) out.erase(out.begin(), out.end() - 1);
    return out;
}

namespace {
std::vector<int> nodes_of(const std::vector<Gen>& gens) {
    std::vector<int> n;
    for (auto& g : gens) n.push_back(g.root);
    return n;
}
}  // namespace

Verdict IdealEngine::is_member(const Element& a, const IdealOptions& opt) {
    Element rw = rewrite_h1(a);
    auto nodes = nodes_of(rw.generators());
    if (nodes.empty()) return is_member(a, node_letters(impl_->rd.node_labels()), opt.L);
    Verdict last;
    int lo = opt.escalate ? std::max(1, rw.max_length()) : opt.L;
    if (lo > opt.L) return is_member(a, node_letters(nodes), opt.L);
    for (int L = lo; L <= opt.L; ++L)
        for (auto& s : support_ladder(impl_->rd, nodes, opt)) {
            last = is_member(a, node_letters(s), L);
            if (last.member()) return last;
        }
    return last;
}

TensorVerdict IdealEngine::tensor_member(const TensorElement& a, const std::vector<Gen>& support, int L) {
    Impl& I = *impl_;
    I.trim();
    if (L < 1 || L > MAX_L) throw Error("word length bound must lie in 1.." + std::to_string(MAX_L));
    TensorVerdict v;
    v.support = support;
    v.L = L;
    int ar = a.arity();
    u64 supp = I.support_mask(support);
    TensorElement rw = rewrite_h1(a);
    if (rw.is_zero()) {
        v.verdict = "member";
        return v;
    }
    using TKey = std::vector<u64>;
    struct Comp {
        std::map<TKey, Q> terms;
        std::vector<std::map<u64, PWord>> slot_words;
    };
    std::map<std::pair<std::vector<WKey>, int>, Comp> comps;
    for (auto& [tw, c] : rw.terms()) {
        std::vector<WKey> wts;
        TKey key;
        std::vector<PWord> ps;
        int deg = 0;
        for (auto& w : tw) {
            PWord p = I.pack(w);
            if ((I.mask_of(p) & ~supp) != 0) {
                v.verdict = "inconclusive";
                v.detail = "element uses letters outside the support";
                return v;
            }
            if (p.len > L) {
                v.verdict = "inconclusive";
                v.detail = "element has words longer than L";
                return v;
            }
            wts.push_back(I.weight_of(p));
            key.push_back(p.key());
            ps.push_back(p);
            deg += p.deg;
        }
        for (int k = 0; k <= c.degree(); ++k) {
            if (c.at(k) == 0) continue;
            Comp& cp = comps[{wts, deg + k}];
            cp.slot_words.resize(ar);
            for (int s = 0; s < ar; ++s) cp.slot_words[s][key[s]] = ps[s];
            cp.terms[key] += c.at(k);
        }
    }
    for (auto& [ck, cp] : comps) {
        auto& [wts, d] = ck;
        std::vector<Block*> bl;
        for (int s = 0; s < ar; ++s) bl.push_back(&I.block(supp, wts[s], d, L));
        // modular screen
        std::vector<std::map<u64, std::vector<std::pair<u64, u64>>>> nfm(ar);
        std::vector<std::set<u32>> used(ar);
        for (int s = 0; s < ar; ++s)
            for (auto& [k, p] : cp.slot_words[s]) nfm[s][k] = I.reduce_mod(*bl[s], {{k, 1}}, &used[s]);
        std::map<TKey, u64> img;
        for (auto& [key, c] : cp.terms) {
            if (c == 0) continue;
            std::vector<std::pair<TKey, u64>> partial{{{}, to_mod(c)}};
            for (int s = 0; s < ar; ++s) {
                std::vector<std::pair<TKey, u64>> nx;
                for (auto& [pk, pv] : partial)
                    for (auto& [k, val] : nfm[s][key[s]]) {
                        TKey t = pk;
                        t.push_back(k);
                        nx.emplace_back(t, mulm(pv, val));
                    }
                partial = std::move(nx);
            }
            for (auto& [t, val] : partial) img[t] = addm(img[t], val);
        }
        bool zero = std::all_of(img.begin(), img.end(), [](auto& kv) { return kv.second == 0; });
        if (!zero) {
            v.verdict = "not-found-at-bound";
            v.witness.clear();
            v.detail = "normal form of the tensor is nonzero within the bound";
            return v;
        }
        // exact pass with telescoping witness
        std::vector<std::unordered_map<u64, u32>> at(ar);
        std::vector<std::vector<QPivot>> piv(ar);
        for (int s = 0; s < ar; ++s) piv[s] = I.exact_pivots(*bl[s], used[s], at[s]);
        struct NF {
            Element lifted;  // homogenized to the degree of the word
            std::map<u32, Q> comb;
            std::vector<std::pair<u64, Q>> rem;
        };
        std::vector<std::map<u64, NF>> nf(ar);
        for (int s = 0; s < ar; ++s)
            for (auto& [k, p] : cp.slot_words[s]) {
                NF n;
                n.rem = I.reduce_exact(piv[s], at[s], {{k, Q(1)}}, n.comb);
                for (auto& [rk, rq] : n.rem) {
                    PWord rp{rk & ((u64(1) << 50) - 1), static_cast<int>((rk >> 50) & 63), static_cast<int>(rk >> 56)};
                    n.lifted += Element(I.unpack(rp), Coeff::hbar(p.deg - rp.deg, rq));
                }
                nf[s][k] = std::move(n);
            }
        TensorElement check(ar);
        for (auto& [key, c] : cp.terms) {
            if (c == 0) continue;
            std::vector<PWord> ps;
            int wdeg = 0;
            for (int s = 0; s < ar; ++s) {
                ps.push_back(cp.slot_words[s].at(key[s]));
                wdeg += ps.back().deg;
            }
            Coeff base = Coeff::hbar(d - wdeg, c);
            std::vector<Element> f;
            for (int s = 0; s < ar; ++s) f.push_back(Element(I.unpack(ps[s])));
            for (int s = 0; s < ar; ++s) {
                const NF& n = nf[s].at(key[s]);
                for (auto& [row, q] : n.comb) {
                    TensorWitnessTerm t;
                    t.slot = s;
                    t.row = I.witness_of(*bl[s], row, q, ps[s].deg);
                    t.row.c = t.row.c * base;
                    t.factors = f;
                    v.witness.push_back(std::move(t));
                }
                f[s] = n.lifted;
            }
            check += TensorElement::pure(f).scaled(base);
        }
        if (!check.is_zero()) {
            v.verdict = "not-found-at-bound";
            v.witness.clear();
            v.detail = "modular screen passed but the exact normal form did not vanish";
            return v;
        }
    }
    if (!(expand(v.witness, ar) == rw)) throw Error("internal: tensor witness does not re-expand");
    v.verdict = "member";
    return v;
}

TensorVerdict IdealEngine::tensor_member(const TensorElement& a, const IdealOptions& opt) {
    TensorElement rw = rewrite_h1(a);
    std::vector<int> nodes;
    for (auto& [tw, c] : rw.terms())
        for (auto& w : tw)
            for (auto& g : w) nodes.push_back(g.root);
    if (nodes.empty()) return tensor_member(a, node_letters(impl_->rd.node_labels()), opt.L);
    int maxlen = 0;
    for (auto& [tw, c] : rw.terms())
        for (auto& w : tw) maxlen = std::max(maxlen, static_cast<int>(w.size()));
    TensorVerdict last;
    int lo = opt.escalate ? std::max(1, maxlen) : opt.L;
    if (lo > opt.L) return tensor_member(a, node_letters(nodes), opt.L);
    for (int L = lo; L <= opt.L; ++L)
        for (auto& s : support_ladder(impl_->rd, nodes, opt)) {
            last = tensor_member(a, node_letters(s), L);
            if (last.member()) return last;
        }
    return last;
}

size_t IdealEngine::span_dimension(const std::vector<Gen>& support, int L, int D) {
    Impl& I = *impl_;
    I.trim();
    u64 supp = I.support_mask(support);
    std::set<WKey> weights;
    int minlen = L + 1;
    for (auto& r : I.rels)
        if ((r.letters & ~supp) == 0 && r.maxlen <= L && r.e <= D) minlen = std::min(minlen, r.maxlen);
    if (minlen > L) return 0;
    const auto& W = I.words(supp, L - minlen, D);
    for (auto& r : I.rels) {
        if ((r.letters & ~supp) != 0 || r.maxlen > L || r.e > D) continue;
        for (auto& [lk, lws] : W)
            for (auto& [rk, rws] : W) {
                if (std::get<0>(lk) + std::get<0>(rk) + r.maxlen > L) continue;
                if (std::get<1>(lk) + std::get<1>(rk) + r.e > D) continue;
                weights.insert(wadd(wadd(std::get<2>(lk), r.weight), std::get<2>(rk)));
            }
    }
    size_t dim = 0;
    for (auto& w : weights) dim += I.block(supp, w, D, L).pivots.size();
    return dim;
}

Report verify_hom(const GeneratorMap& map, const RelationSet& src, IdealEngine& tgt, const IdealOptions& opt) {
    Report rep;
    rep.name = "verify_hom:" + src.name;
    for (auto& rel : src.relations) {
        auto t0 = std::chrono::steady_clock::now();
        ReportEntry e;
        e.label = rel.label;
        e.L = opt.L;
        Element img = substitute(map, rel.element);
        if (rewrite_h1(img).is_zero()) {
            e.verdict = "member";
            e.detail = "image vanishes identically";
        } else {
            Verdict v = tgt.is_member(img, opt);
            e.verdict = v.verdict;
            e.detail = v.detail;
            e.L = v.L;
            e.witness = v.witness_text();
            for (auto& g : v.support) e.support.push_back(g.to_string());
        }
        e.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.entries.push_back(e);
    }
    return rep;
}

Report verify_hom(const GeneratorMap& map, const RelationSet& src, const RelationSet& tgt, const IdealOptions& opt) {
    IdealEngine eng(tgt);
    return verify_hom(map, src, eng, opt);
}

}  // namespace syang
