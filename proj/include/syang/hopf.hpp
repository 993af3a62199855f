#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "syang/idealcheck.hpp"
#include "syang/matrixrep.hpp"
#include "syang/presentations.hpp"
#include "syang/report.hpp"

namespace syang {

// Linear combination of nested super brackets of level-0 generators.
class LieWord {
public:
    struct Node;

    LieWord() = default;
    static LieWord gen(const Gen& g);
    static LieWord bracket(const LieWord& a, const LieWord& b);
    LieWord operator+(const LieWord& o) const;
    LieWord scaled(const Q& q) const;
    bool is_zero() const { return terms_.empty(); }
    int length() const;
    // Free-algebra expansion; throws past max_terms words.
    Element expand(size_t max_terms = 1u << 16) const;
    SuperMatrixPoly eval(const std::map<Gen, SuperMatrixPoly>& images, const SuperMatrixPoly& zero) const;
    std::string to_string() const;

private:
    std::vector<std::pair<Q, std::shared_ptr<const Node>>> terms_;
};

struct Cutoffs {
    int H = -1;  // finite-root height, -1 = all
    int N = 0;   // loop degree
};

// Basis vector of the (loop) algebra: a root vector, or h_l t^k when cartan = l.
struct BasisKey {
    WeightVector weight;
    int cartan = -1;
    auto operator<=>(const BasisKey&) const = default;
    bool operator==(const BasisKey&) const = default;
};

// Element of g (x) g in basis coordinates.
class PairTensor {
public:
    using Key = std::pair<BasisKey, BasisKey>;
    void add(const Key& k, const Q& q);
    const std::map<Key, Q>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    PairTensor operator+(const PairTensor& o) const;
    PairTensor operator-(const PairTensor& o) const;
    PairTensor scaled(const Q& q) const;
    bool operator==(const PairTensor& o) const { return t_ == o.t_; }

private:
    std::map<Key, Q> t_;
};

int basis_parity(const BasisKey& k);
// [h_i (x) 1, t] and [1 (x) h_i, t] by the weight rule.
PairTensor act_left(const RootDatum& rd, int i, const PairTensor& t);
PairTensor act_right(const RootDatum& rd, int i, const PairTensor& t);
PairTensor flip(const PairTensor& t);

// Basis words and their matrices for one datum.
class LieBasis {
public:
    LieBasis(const RootDatum& rd, int N);
    const RootDatum& datum() const { return rd_; }
    const Realization& realization() const { return real_; }
    const LieWord& word(const BasisKey& k);
    const SuperMatrixPoly& matrix(const BasisKey& k);
    // Key of a real root weight (either sign) or h_l t^k.
    static BasisKey root_key(const WeightVector& w) { return {w, -1}; }
    BasisKey cartan_key(int label, int k) const;
    // Positive real roots within the cutoffs.
    std::vector<WeightVector> positive_real_roots(const Cutoffs& c) const;
    std::vector<int> finite_nodes() const;

private:
    LieWord build(const BasisKey& k);
    RootDatum rd_;
    Realization real_;
    std::map<BasisKey, LieWord> words_;
    std::map<BasisKey, SuperMatrixPoly> mats_;
};

struct CasimirExpr {
    RootDatum rd;
    Cutoffs cut;
    PairTensor terms;  // sum c * x_{-a} (x) x_a plus the Cartan and imaginary blocks
    std::shared_ptr<LieBasis> basis;
    // Number of summands x^{(k)} (x) x_{(k)}: one per positive-side basis vector.
    size_t summands() const;
    TensorElement to_tensor(size_t max_terms = 1u << 18) const;
    TensorMatrix eval() const;
    std::string to_string() const;
};

// Dual-basis sum over the given positive real roots and imaginary degrees 1..N.
CasimirExpr omega_plus(const RootDatum& rd, const Cutoffs& cut);
CasimirExpr omega_plus_over(const RootDatum& rd, const std::vector<WeightVector>& roots, int N,
                            std::shared_ptr<LieBasis> basis = nullptr);
// Full symmetric Casimir: every pair in both orders, Cartan blocks once per degree.
CasimirExpr omega_full(const RootDatum& rd, const Cutoffs& cut);
TensorMatrix eval_pairs(LieBasis& basis, const PairTensor& t);
TensorElement expand_pairs(LieBasis& basis, const PairTensor& t, size_t max_terms = 1u << 18);

// E + [Y, Omega_+]; canonical when every term of Y is 1 (x) b.
struct OmegaForm {
    TensorElement E{2};
    TensorElement Y{2};
    // The b with Y = 1 (x) b (canonical forms only).
    Element y_right() const;
    std::string to_string() const;
};

class CoproductContext {
public:
    explicit CoproductContext(const RootDatum& rd, int fit_loop_degree = 2);
    const RootDatum& datum() const { return rd_; }
    // Primitive coproduct extended multiplicatively; level-0 letters only.
    TensorElement delta0(const Element& a) const;
    // [Delta a, Omega_+] for level-0 a.
    TensorElement F(const Element& a) const;
    OmegaForm delta(const Gen& g) const;
    // Words may carry at most one level-1 letter.
    OmegaForm delta(const Element& a) const;
    OmegaForm canonical(const OmegaForm& f) const;
    const std::map<Gen, TensorElement>& f_table() const { return f_; }
    // [Delta x, Omega_+] checked against the loop realization when fitting.
    const Report& fit_report() const { return fit_; }

private:
    TensorElement F_word(const Word& w) const;
    RootDatum rd_;
    std::map<Gen, TensorElement> f_;
    Report fit_;
};

// Level-0 and level-1 catalog generators; level 1 in expanded form (finite cutoffs).
TensorElement coproduct(const RootDatum& rd, const Gen& g, const Cutoffs& cut);
TensorElement coproduct_op(const RootDatum& rd, const Gen& g, const Cutoffs& cut);
Coeff counit_of(const Element& a);

// phi(g u) = [g (x) 1, Omega_cut] for g = h_i (weight rule) or x+-_i (free brackets).
TensorElement classical_cobracket(const RootDatum& rd, const Gen& g, const Cutoffs& cut);

Report verify_correspondence(const RootDatum& rd, const std::vector<int>& nodes, const Cutoffs& cut);

// (T (x) T) Omega_cut - Omega'_cut, evaluated in the loop realization of the target.
struct CasimirShift {
    TensorMatrix difference;
    Q a, b;  // difference = a x+ (x) x- + b x- (x) x+ when fitted
    bool fitted = false;
    std::string detail;
};
CasimirShift casimir_shift(const QuantumReflection& T, int i, const Cutoffs& cut);
Report verify_casimir_shift(const RootDatum& rd, const std::vector<int>& odd_nodes, const Cutoffs& cut,
                            const OddReflectionSigns& signs = {});

struct CompatOptions {
    IdealOptions ideal;
    Cutoffs fit{-1, 1};
    // Generators to test; empty = h~ and x+- at level 1 for i-1, i, i+1.
    std::vector<Gen> gens;
    // Use x+ (x) x- - x- (x) x+ for (T (x) T)(Omega_+) - Omega_+ instead of the computed shift.
    bool literal_shift = false;
};
// The residual p = (eps (x) id)((T (x) T) Delta g - Delta' T_0 g) for one generator.
struct Residual {
    Gen g;
    Element p, expected;
    bool has_expected = false;
};
Report verify_reflection_compat(const RootDatum& rd, int i, const CompatOptions& opt,
                                std::vector<Residual>* residuals = nullptr);

Report verify_coassoc(const RootDatum& rd, const std::vector<Gen>& gens, int H_inner);
Report verify_counit(const RootDatum& rd);

}  // namespace syang
