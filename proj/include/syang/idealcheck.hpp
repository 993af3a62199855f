#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "syang/presentations.hpp"
#include "syang/report.hpp"
#include "syang/superfree.hpp"

namespace syang {

// One summand c * left * relation * right of a membership witness.
struct WitnessTerm {
    Coeff c;
    Word left;
    std::string label;
    Word right;
};

struct Verdict {
    std::string verdict;  // member, not-found-at-bound, inconclusive
    std::vector<WitnessTerm> witness;
    std::vector<Gen> support;
    int L = 0;
    std::string detail;
    bool member() const { return verdict == "member"; }
    std::string witness_text() const;
};

// Tensor witness summand: factor `slot` is c * left * relation * right, the others are given elements.
struct TensorWitnessTerm {
    int slot = 0;
    WitnessTerm row;
    std::vector<Element> factors;  // factors[slot] is ignored
};

struct TensorVerdict {
    std::string verdict;
    std::vector<TensorWitnessTerm> witness;
    std::vector<Gen> support;
    int L = 0;
    std::string detail;
    bool member() const { return verdict == "member"; }
};

struct IdealOptions {
    int L = 4;
    // Extra rings of neighbouring nodes tried after the nodes of the element itself.
    int neighbor_rings = 1;
    // Try shorter bounds and smaller supports first.
    bool escalate = true;
};

// h(i,1) is rewritten as ht(i,1) + (hbar/2) h(i,0)^2 before any linear algebra.
Element rewrite_h1(const Element& a);
TensorElement rewrite_h1(const TensorElement& a);

class IdealEngine {
public:
    explicit IdealEngine(const RelationSet& rs);
    ~IdealEngine();
    IdealEngine(const IdealEngine&) = delete;
    IdealEngine& operator=(const IdealEngine&) = delete;

    const RelationSet& relations() const;
    // Cached spans are dropped between queries once they pass roughly this many bytes (default 1 GiB).
    void set_cache_budget(size_t bytes);

    // Letters of the engine alphabet (h0, ht, x+-0, x+-1) at the given nodes.
    std::vector<Gen> node_letters(const std::vector<int>& nodes) const;

    Verdict is_member(const Element& a, const std::vector<Gen>& support, int L);
    Verdict is_member(const Element& a, const IdealOptions& opt);
    TensorVerdict tensor_member(const TensorElement& a, const std::vector<Gen>& support, int L);
    TensorVerdict tensor_member(const TensorElement& a, const IdealOptions& opt);

    // Dimension of span{ l rel r : |l|+|rel|+|r| <= L } over all weight/degree blocks, degrees <= D.
    size_t span_dimension(const std::vector<Gen>& support, int L, int D);

    // Re-expansion of a witness (in rewritten form).
    Element expand(const std::vector<WitnessTerm>& w) const;
    TensorElement expand(const std::vector<TensorWitnessTerm>& w, int arity) const;

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

// Supports tried for an element touching `nodes`: the nodes themselves, then successive neighbour rings.
std::vector<std::vector<int>> support_ladder(const RootDatum& rd, std::vector<int> nodes, const IdealOptions& opt);

// For each source relation, decides whether its image lies in the target ideal.
Report verify_hom(const GeneratorMap& map, const RelationSet& src, IdealEngine& tgt, const IdealOptions& opt);
Report verify_hom(const GeneratorMap& map, const RelationSet& src, const RelationSet& tgt, const IdealOptions& opt);

}  // namespace syang
