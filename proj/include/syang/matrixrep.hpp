#pragma once

#include <map>
#include <string>
#include <vector>

#include "syang/report.hpp"
#include "syang/roots.hpp"
#include "syang/superfree.hpp"

namespace syang {

struct RelationSet;

// Laurent polynomial in t, sparse.
struct LPoly {
    std::map<int, Q> c;

    bool is_zero() const { return c.empty(); }
    void add(int k, const Q& q);
    LPoly operator+(const LPoly& o) const;
    LPoly operator-(const LPoly& o) const;
    LPoly scaled(const Q& q) const;
    bool operator==(const LPoly& o) const { return c == o.c; }
    std::string to_string() const;
};

class SuperMatrixPoly {
public:
    SuperMatrixPoly() = default;
    // par[a] = 1 for a delta position.
    SuperMatrixPoly(std::vector<int> par, int N);
    static SuperMatrixPoly unit(const std::vector<int>& par, int N, int a, int b, int k = 0, const Q& q = 1);
    static SuperMatrixPoly identity(const std::vector<int>& par, int N);

    int dim() const { return static_cast<int>(par_.size()); }
    int cutoff() const { return N_; }
    const std::vector<int>& positions() const { return par_; }
    const LPoly& at(int a, int b) const { return e_[a * dim() + b]; }
    LPoly& at(int a, int b) { return e_[a * dim() + b]; }
    bool overflow() const { return overflow_; }
    bool is_zero() const;

    SuperMatrixPoly operator+(const SuperMatrixPoly& o) const;
    SuperMatrixPoly operator-(const SuperMatrixPoly& o) const;
    SuperMatrixPoly operator*(const SuperMatrixPoly& o) const;
    SuperMatrixPoly scaled(const Q& q) const;
    bool operator==(const SuperMatrixPoly& o) const;

    // -1 when mixed.
    int parity() const;
    LPoly supertrace() const;
    std::string to_json() const;

private:
    std::vector<int> par_;
    int N_ = 0;
    std::vector<LPoly> e_;
    bool overflow_ = false;
};

SuperMatrixPoly super_commutator(const SuperMatrixPoly& a, const SuperMatrixPoly& b);
// Pairing (X, Y) = constant term of str(XY).
Q pairing(const SuperMatrixPoly& x, const SuperMatrixPoly& y);

struct Realization {
    RootDatum rd;
    int N = 0;
    std::vector<int> position_parity;
    std::map<Gen, SuperMatrixPoly> images;
    std::vector<int> coroot_sign;  // storage order

    SuperMatrixPoly zero() const { return SuperMatrixPoly(position_parity, N); }
    SuperMatrixPoly unit(int a, int b, int k = 0, const Q& q = 1) const {
        return SuperMatrixPoly::unit(position_parity, N, a, b, k, q);
    }
    // h_alpha = sum_a (alpha, w_a) E_aa for a weight in the root lattice (t^0).
    SuperMatrixPoly cartan(const WeightVector& w) const;
};

Realization realize(const RootDatum& rd, int N);

SuperMatrixPoly eval(const Realization& real, const Element& a);

Report check_relations(const Realization& real, const RelationSet& rs);

struct Conjugator {
    SuperMatrixPoly s, s_inv;
    SuperMatrixPoly conjugate(const SuperMatrixPoly& x) const { return s * x * s_inv; }
};

Conjugator even_reflection_conjugator(const Realization& real, int i);

// A positive root vector and its dual negative partner, pairing 1.
struct RootPair {
    WeightVector weight;
    SuperMatrixPoly neg, pos;
    int parity = 0;
};

// Finite roots within height H (number of simple roots, -1 = all), loop roots up to degree Nloop.
std::vector<RootPair> root_vectors(const Realization& real, int H = -1, int Nloop = 0);

// Element of End(V) (x) End(V) with Laurent entries.
class TensorMatrix {
public:
    struct Key {
        int a, b, k1, c, d, k2;
        auto operator<=>(const Key&) const = default;
    };
    TensorMatrix() = default;
    explicit TensorMatrix(std::vector<int> par) : par_(std::move(par)) {}
    static TensorMatrix outer(const SuperMatrixPoly& x, const SuperMatrixPoly& y);

    const std::map<Key, Q>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add(const Key& k, const Q& q);
    TensorMatrix operator+(const TensorMatrix& o) const;
    TensorMatrix operator-(const TensorMatrix& o) const;
    TensorMatrix operator*(const TensorMatrix& o) const;
    TensorMatrix scaled(const Q& q) const;
    bool operator==(const TensorMatrix& o) const { return t_ == o.t_; }
    const std::vector<int>& positions() const { return par_; }
    // sigma(A (x) B) = (-1)^{|A||B|} B (x) A
    TensorMatrix flipped() const;
    template <class Pred>
    TensorMatrix filtered(Pred keep) const {
        TensorMatrix r(par_);
        for (auto& [k, q] : t_)
            if (keep(k)) r.t_.emplace(k, q);
        return r;
    }

private:
    std::vector<int> par_;
    std::map<Key, Q> t_;
};

// AB - BA; a super commutator whenever one side is even.
TensorMatrix commutator(const TensorMatrix& a, const TensorMatrix& b);

TensorMatrix eval_tensor(const Realization& real, const TensorElement& t);

}  // namespace syang
