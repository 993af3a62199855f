#include "syang/matrixrep.hpp"

#include <chrono>
#include <sstream>

#include "json.hpp"

#include "syang/errors.hpp"
#include "syang/presentations.hpp"

namespace syang {

// ---------------------------------------------------------------- LPoly

void LPoly::add(int k, const Q& q) {
    if (q == 0) return;
    auto [it, ins] = c.emplace(k, q);
    if (ins) return;
    it->second += q;
    if (it->second == 0) c.erase(it);
}

LPoly LPoly::operator+(const LPoly& o) const {
    LPoly r = *this;
    for (auto& [k, q] : o.c) r.add(k, q);
    return r;
}

LPoly LPoly::operator-(const LPoly& o) const {
    LPoly r = *this;
    for (auto& [k, q] : o.c) r.add(k, -q);
    return r;
}

LPoly LPoly::scaled(const Q& q) const {
    LPoly r;
    if (q == 0) return r;
    for (auto& [k, v] : c) r.c.emplace(k, v * q);
    return r;
}

std::string LPoly::to_string() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, q] : c) {
        if (!first) os << (q < 0 ? " - " : " + ");
        else if (q < 0) os << "-";
        os << Q(abs(q)).get_str();
        if (k != 0) os << "t^" << k;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- SuperMatrixPoly

SuperMatrixPoly::SuperMatrixPoly(std::vector<int> par, int N)
    : par_(std::move(par)), N_(N), e_(par_.size() * par_.size()) {}

SuperMatrixPoly SuperMatrixPoly::unit(const std::vector<int>& par, int N, int a, int b, int k, const Q& q) {
    SuperMatrixPoly m(par, N);
    if (k > N || k < -N) throw Error("unit matrix degree outside loop cutoff");
    m.at(a, b).add(k, q);
    return m;
}

SuperMatrixPoly SuperMatrixPoly::identity(const std::vector<int>& par, int N) {
    SuperMatrixPoly m(par, N);
    for (int a = 0; a < m.dim(); ++a) m.at(a, a).add(0, 1);
    return m;
}

bool SuperMatrixPoly::is_zero() const {
    for (auto& p : e_)
        if (!p.is_zero()) return false;
    return true;
}

static void same_shape(const SuperMatrixPoly& a, const SuperMatrixPoly& b) {
    if (a.positions() != b.positions() || a.cutoff() != b.cutoff()) throw Error("matrix shape mismatch");
}

SuperMatrixPoly SuperMatrixPoly::operator+(const SuperMatrixPoly& o) const {
    same_shape(*this, o);
    SuperMatrixPoly r = *this;
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    r.overflow_ = overflow_ || o.overflow_;
    return r;
}

SuperMatrixPoly SuperMatrixPoly::operator-(const SuperMatrixPoly& o) const { return *this + o.scaled(-1); }

SuperMatrixPoly SuperMatrixPoly::scaled(const Q& q) const {
    SuperMatrixPoly r = *this;
    for (auto& p : r.e_) p = p.scaled(q);
    return r;
}

SuperMatrixPoly SuperMatrixPoly::operator*(const SuperMatrixPoly& o) const {
    same_shape(*this, o);
    SuperMatrixPoly r(par_, N_);
    r.overflow_ = overflow_ || o.overflow_;
    int n = dim();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const LPoly& x = at(a, b);
            if (x.is_zero()) continue;
            for (int c = 0; c < n; ++c) {
                const LPoly& y = o.at(b, c);
                for (auto& [k1, q1] : x.c)
                    for (auto& [k2, q2] : y.c) {
                        int k = k1 + k2;
                        if (k > N_ || k < -N_) {
                            r.overflow_ = true;
                            continue;
                        }
                        r.at(a, c).add(k, q1 * q2);
                    }
            }
        }
    return r;
}

bool SuperMatrixPoly::operator==(const SuperMatrixPoly& o) const {
    return par_ == o.par_ && N_ == o.N_ && e_ == o.e_ && overflow_ == o.overflow_;
}

int SuperMatrixPoly::parity() const {
    int p = -2;
    for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b) {
            if (at(a, b).is_zero()) continue;
            int q = par_[a] ^ par_[b];
            if (p == -2)
                p = q;
            else if (p != q)
                return -1;
        }
    return p == -2 ? 0 : p;
}

LPoly SuperMatrixPoly::supertrace() const {
    LPoly r;
    for (int a = 0; a < dim(); ++a) r = r + at(a, a).scaled(par_[a] ? -1 : 1);
    return r;
}

std::string SuperMatrixPoly::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (int a = 0; a < dim(); ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (int b = 0; b < dim(); ++b) row.push_back(at(a, b).to_string());
        j.push_back(row);
    }
    return j.dump();
}

static SuperMatrixPoly parity_block(const SuperMatrixPoly& x, int p) {
    SuperMatrixPoly r(x.positions(), x.cutoff());
    for (int a = 0; a < x.dim(); ++a)
        for (int b = 0; b < x.dim(); ++b)
            if ((x.positions()[a] ^ x.positions()[b]) == p) r.at(a, b) = x.at(a, b);
    return r;
}

SuperMatrixPoly super_commutator(const SuperMatrixPoly& a, const SuperMatrixPoly& b) {
    SuperMatrixPoly r(a.positions(), a.cutoff());
    for (int pa = 0; pa < 2; ++pa)
        for (int pb = 0; pb < 2; ++pb) {
            auto x = parity_block(a, pa), y = parity_block(b, pb);
            if (x.is_zero() || y.is_zero()) continue;
            r = r + (x * y - (y * x).scaled((pa & pb) ? -1 : 1));
        }
    return r;
}

Q pairing(const SuperMatrixPoly& x, const SuperMatrixPoly& y) {
    auto s = (x * y).supertrace();
    auto it = s.c.find(0);
    return it == s.c.end() ? Q(0) : it->second;
}

// ---------------------------------------------------------------- Realization

SuperMatrixPoly Realization::cartan(const WeightVector& w) const {
    SuperMatrixPoly m = zero();
    for (int a = 1; a <= rd.size(); ++a) {
        int v = bilinear(w, rd.weight(a));
        if (v) m.at(a - 1, a - 1).add(0, v);
    }
    return m;
}

Realization realize(const RootDatum& rd, int N) {
    if (N < 0) throw Error("negative loop cutoff");
    if (rd.affine && N < 1) throw Error("affine realization needs N >= 1");
    if (!rd.affine && N != 0) throw Error("finite realization needs N = 0");
    Realization r;
    r.rd = rd;
    r.N = N;
    int S = rd.size();
    for (int a = 1; a <= S; ++a) r.position_parity.push_back(rd.is_delta(a) ? 1 : 0);
    for (int p = 0; p < rd.num_nodes(); ++p) {
        int lab = rd.node_label(p);
        int par = rd.parity[p];
        int left = lab == 0 ? S : lab;
        int d = rd.is_delta(left) ? -1 : 1;
        r.coroot_sign.push_back(d);
        SuperMatrixPoly xp, xm;
        if (lab == 0) {
            xp = r.unit(S - 1, 0, 1);
            xm = r.unit(0, S - 1, -1, d);
        } else {
            xp = r.unit(lab - 1, lab, 0);
            xm = r.unit(lab, lab - 1, 0, d);
        }
        r.images[xplus(lab, 0, par)] = xp;
        r.images[xminus(lab, 0, par)] = xm;
        r.images[hgen(lab, 0)] = super_commutator(xp, xm);
    }
    return r;
}

SuperMatrixPoly eval(const Realization& real, const Element& a) {
    SuperMatrixPoly r = real.zero();
    SuperMatrixPoly id = SuperMatrixPoly::identity(real.position_parity, real.N);
    for (auto& [w, c] : a.terms()) {
        if (!c.is_constant()) throw Error("cannot evaluate an hbar-dependent element");
        SuperMatrixPoly m = id;
        for (auto& g : w) {
            if (g.level != 0 || g.kind == Kind::Htilde) throw Error("cannot evaluate level > 0 generator " + g.to_string());
            auto it = real.images.find(g);
            if (it == real.images.end()) throw Error("generator outside realization: " + g.to_string());
            m = m * it->second;
        }
        r = r + m.scaled(c.at(0));
    }
    return r;
}

Report check_relations(const Realization& real, const RelationSet& rs) {
    Report rep;
    rep.name = "check_relations:" + rs.name;
    for (auto& rel : rs.relations) {
        auto t0 = std::chrono::steady_clock::now();
        ReportEntry e;
        e.label = rel.label;
        auto m = eval(real, rel.element);
        if (m.overflow())
            e.verdict = "overflow";
        else if (m.is_zero())
            e.verdict = "pass";
        else {
            e.verdict = "fail";
            e.detail = m.to_json();
        }
        e.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.entries.push_back(e);
    }
    return rep;
}

static SuperMatrixPoly exp_nilpotent(const SuperMatrixPoly& x) {
    SuperMatrixPoly r = SuperMatrixPoly::identity(x.positions(), x.cutoff());
    SuperMatrixPoly term = r;
    for (int k = 1; k <= x.dim() + 1; ++k) {
        term = (term * x).scaled(Q(1, k));
        if (term.is_zero()) break;
        r = r + term;
    }
    return r;
}

Conjugator even_reflection_conjugator(const Realization& real, int i) {
    if (real.rd.root_parity(i) != 0) throw Error("conjugator needs an even root");
    int par = 0;
    const auto& xp = real.images.at(xplus(i, 0, par));
    // (x+, sign(a_ii) x-, sign(a_ii) h) is an sl2 triple.
    auto xm = real.images.at(xminus(i, 0, par)).scaled(Q(real.rd.pair(i, i) > 0 ? 1 : -1));
    Conjugator c;
    c.s = exp_nilpotent(xm) * exp_nilpotent(xp.scaled(-1)) * exp_nilpotent(xm);
    c.s_inv = exp_nilpotent(xm.scaled(-1)) * exp_nilpotent(xp) * exp_nilpotent(xm.scaled(-1));
    return c;
}

std::vector<RootPair> root_vectors(const Realization& real, int H, int Nloop) {
    const auto& rd = real.rd;
    if (Nloop > real.N) throw Error("loop cutoff exceeds realization");
    int S = rd.size();
    std::vector<RootPair> out;
    auto sgn = [&](int a) { return real.position_parity[a - 1] ? -1 : 1; };
    for (int a = 1; a <= S; ++a)
        for (int b = a + 1; b <= S; ++b) {
            if (H >= 0 && b - a > H) continue;
            RootPair p;
            p.weight = rd.weight(a) - rd.weight(b);
            p.parity = real.position_parity[a - 1] ^ real.position_parity[b - 1];
            p.pos = real.unit(a - 1, b - 1);
            p.neg = real.unit(b - 1, a - 1, 0, sgn(a));
            out.push_back(p);
        }
    for (int k = 1; k <= Nloop; ++k) {
        for (int a = 1; a <= S; ++a)
            for (int b = 1; b <= S; ++b) {
                if (a == b) continue;
                RootPair p;
                p.weight = rd.weight(a) - rd.weight(b);
                p.weight.imaginary_deg = k;
                p.parity = real.position_parity[a - 1] ^ real.position_parity[b - 1];
                p.pos = real.unit(a - 1, b - 1, k);
                p.neg = real.unit(b - 1, a - 1, -k, sgn(a));
                out.push_back(p);
            }
        // Imaginary block: h_l t^k against the dual Cartan basis at t^-k.
        int r = S - 1;
        std::vector<std::vector<Q>> M(r, std::vector<Q>(r));
        for (int l = 0; l < r; ++l)
            for (int m = 0; m < r; ++m) M[l][m] = bilinear(rd.simple_roots[l], rd.simple_roots[m]);
        // Invert M by Gauss-Jordan.
        std::vector<std::vector<Q>> inv(r, std::vector<Q>(r, 0));
        for (int l = 0; l < r; ++l) inv[l][l] = 1;
        for (int col = 0; col < r; ++col) {
            int piv = col;
            while (piv < r && M[piv][col] == 0) ++piv;
            if (piv == r) throw Error("singular Cartan block (m = n)");
            std::swap(M[piv], M[col]);
            std::swap(inv[piv], inv[col]);
            Q f = M[col][col];
            for (int c = 0; c < r; ++c) M[col][c] /= f, inv[col][c] /= f;
            for (int row = 0; row < r; ++row) {
                if (row == col || M[row][col] == 0) continue;
                Q g = M[row][col];
                for (int c = 0; c < r; ++c) M[row][c] -= g * M[col][c], inv[row][c] -= g * inv[col][c];
            }
        }
        for (int l = 0; l < r; ++l) {
            RootPair p;
            p.weight = WeightVector(rd.m, rd.n);
            p.weight.imaginary_deg = k;
            SuperMatrixPoly hl = real.cartan(rd.simple_roots[l]);
            p.pos = real.zero();
            p.neg = real.zero();
            for (int a = 0; a < S; ++a) p.pos.at(a, a) = hl.at(a, a).c.empty() ? LPoly{} : LPoly{{{k, hl.at(a, a).c.at(0)}}};
            for (int m = 0; m < r; ++m) {
                SuperMatrixPoly hm = real.cartan(rd.simple_roots[m]);
                for (int a = 0; a < S; ++a)
                    if (!hm.at(a, a).is_zero()) p.neg.at(a, a).add(-k, inv[l][m] * hm.at(a, a).c.at(0));
            }
            out.push_back(p);
        }
    }
    return out;
}

// ---------------------------------------------------------------- TensorMatrix

void TensorMatrix::add(const Key& k, const Q& q) {
    if (q == 0) return;
    auto [it, ins] = t_.emplace(k, q);
    if (ins) return;
    it->second += q;
    if (it->second == 0) t_.erase(it);
}

TensorMatrix TensorMatrix::outer(const SuperMatrixPoly& x, const SuperMatrixPoly& y) {
    TensorMatrix r(x.positions());
    for (int a = 0; a < x.dim(); ++a)
        for (int b = 0; b < x.dim(); ++b)
            for (auto& [k1, q1] : x.at(a, b).c)
                for (int c = 0; c < y.dim(); ++c)
                    for (int d = 0; d < y.dim(); ++d)
                        for (auto& [k2, q2] : y.at(c, d).c) r.add({a, b, k1, c, d, k2}, q1 * q2);
    return r;
}

TensorMatrix TensorMatrix::operator+(const TensorMatrix& o) const {
    TensorMatrix r = *this;
    if (r.par_.empty()) r.par_ = o.par_;
    for (auto& [k, q] : o.t_) r.add(k, q);
    return r;
}

TensorMatrix TensorMatrix::operator-(const TensorMatrix& o) const { return *this + o.scaled(-1); }

TensorMatrix TensorMatrix::scaled(const Q& q) const {
    TensorMatrix r(par_);
    if (q == 0) return r;
    for (auto& [k, v] : t_) r.t_.emplace(k, v * q);
    return r;
}

TensorMatrix TensorMatrix::operator*(const TensorMatrix& o) const {
    TensorMatrix r(par_.empty() ? o.par_ : par_);
    const auto& par = r.par_;
    for (auto& [x, qx] : t_)
        for (auto& [y, qy] : o.t_) {
            if (x.b != y.a || x.d != y.c) continue;
            // (A (x) B)(C (x) D) = (-1)^{|B||C|} AC (x) BD
            int pB = par[x.c] ^ par[x.d], pC = par[y.a] ^ par[y.b];
            Q q = qx * qy;
            if (pB & pC) q = -q;
            r.add({x.a, y.b, x.k1 + y.k1, x.c, y.d, x.k2 + y.k2}, q);
        }
    return r;
}

TensorMatrix TensorMatrix::flipped() const {
    TensorMatrix r(par_);
    for (auto& [k, q] : t_) {
        int pA = par_[k.a] ^ par_[k.b], pB = par_[k.c] ^ par_[k.d];
        r.add({k.c, k.d, k.k2, k.a, k.b, k.k1}, (pA & pB) ? Q(-q) : q);
    }
    return r;
}

TensorMatrix commutator(const TensorMatrix& a, const TensorMatrix& b) { return a * b - b * a; }

TensorMatrix eval_tensor(const Realization& real, const TensorElement& t) {
    if (t.arity() != 2) throw Error("tensor evaluation needs arity 2");
    TensorMatrix r(real.position_parity);
    for (auto& [w, c] : t.terms()) {
        if (!c.is_constant()) throw Error("cannot evaluate an hbar-dependent tensor");
        auto x = eval(real, Element(w[0])), y = eval(real, Element(w[1]));
        if (x.overflow() || y.overflow()) throw Error("loop degree overflow in tensor evaluation");
        r = r + TensorMatrix::outer(x, y).scaled(c.at(0));
    }
    return r;
}

}  // namespace syang
