#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace syang {

using Q = mpq_class;

// Polynomial in hbar over the rationals; c[k] multiplies hbar^k.
class Coeff {
public:
    Coeff() = default;
    Coeff(long v) : Coeff(Q(v)) {}
    Coeff(int v) : Coeff(Q(v)) {}
    Coeff(const Q& q);
    static Coeff hbar(int power = 1, const Q& q = 1);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    int low_degree() const;
    Q at(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Q(0); }
    const std::vector<Q>& coeffs() const { return c_; }
    bool is_monomial() const;
    bool is_constant() const { return c_.size() <= 1; }
    Q eval(const Q& h) const;

    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator*(const Coeff& o) const;
    Coeff operator-() const;
    Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
    Coeff& operator-=(const Coeff& o) { return *this = *this - o; }
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }
    bool operator==(const Coeff& o) const { return c_ == o.c_; }

    // Shift by hbar^k; k may be negative only if the low terms vanish.
    Coeff shifted(int k) const;
    std::string to_string() const;

private:
    void trim();
    std::vector<Q> c_;
};

enum class Kind : unsigned char { H = 0, Htilde = 1, Xplus = 2, Xminus = 3 };

struct Gen {
    Kind kind = Kind::H;
    int root = 0;
    int level = 0;
    int parity = 0;

    auto operator<=>(const Gen&) const = default;
    bool operator==(const Gen&) const = default;
    std::string to_string() const;
    bool is_x() const { return kind == Kind::Xplus || kind == Kind::Xminus; }
    // Grading used by the ideal engine: hbar and level-r letters have degree 1 and r.
    int degree() const { return kind == Kind::Htilde ? 1 : level; }
};

Gen xplus(int root, int level, int parity);
Gen xminus(int root, int level, int parity);
Gen hgen(int root, int level);
Gen htilde(int root, int level = 1);

using Word = std::vector<Gen>;

int word_parity(const Word& w);
int word_degree(const Word& w);
std::string word_to_string(const Word& w);

class Element {
public:
    using Map = std::map<Word, Coeff>;

    Element() = default;
    Element(const Coeff& c);  // scalar times the empty word
    Element(const Gen& g);
    Element(const Word& w, const Coeff& c = Coeff(1));
    static Element one() { return Element(Coeff(1)); }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    Coeff coefficient(const Word& w) const;
    void add_term(const Word& w, const Coeff& c);

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    bool operator==(const Element& o) const { return t_ == o.t_; }

    Element scaled(const Coeff& c) const;
    // Component of a fixed parity.
    Element parity_part(int p) const;
    // -1 when mixed, 0/1 when homogeneous; zero counts as even.
    int parity() const;
    int max_length() const;
    std::vector<Gen> generators() const;
    std::string to_string() const;

private:
    Map t_;
};

Element operator*(const Coeff& c, const Element& e);

Element multiply(const Element& a, const Element& b);
Element super_bracket(const Element& a, const Element& b);
Element anti_bracket(const Element& a, const Element& b);
Element ad_pow(const Element& a, int k, const Element& b);
Element power(const Element& a, int k);

using TWord = std::vector<Word>;

class TensorElement {
public:
    using Map = std::map<TWord, Coeff>;

    explicit TensorElement(int arity = 2) : arity_(arity) {}
    static TensorElement pure(const std::vector<Element>& factors);

    int arity() const { return arity_; }
    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    void add_term(const TWord& w, const Coeff& c);
    Coeff coefficient(const TWord& w) const;

    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement operator-() const;
    TensorElement operator*(const TensorElement& o) const;
    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    bool operator==(const TensorElement& o) const { return arity_ == o.arity_ && t_ == o.t_; }

    TensorElement scaled(const Coeff& c) const;
    TensorElement parity_part(int p) const;
    int parity() const;
    std::string to_string() const;

private:
    int arity_;
    Map t_;
};

TensorElement tensor(const Element& a, const Element& b);
TensorElement tensor3(const Element& a, const Element& b, const Element& c);
TensorElement boxed(const Element& a);
TensorElement super_bracket(const TensorElement& a, const TensorElement& b);
TensorElement commutator(const TensorElement& a, const TensorElement& b);
// sigma(a (x) b) = (-1)^{|a||b|} b (x) a
TensorElement flip(const TensorElement& t);
// Coefficient of hbar^0 .. only keeps terms whose coefficient is divisible by hbar^k and divides.
TensorElement divide_hbar(const TensorElement& t, int k = 1);

struct GeneratorMap {
    std::map<Gen, Element> images;
    bool has(const Gen& g) const { return images.count(g) > 0; }
    const Element& at(const Gen& g) const;
};

struct TensorGeneratorMap {
    std::map<Gen, TensorElement> images;
    int arity = 2;
};

// Algebra-homomorphic extension.
Element substitute(const GeneratorMap& map, const Element& a);
TensorElement substitute(const TensorGeneratorMap& map, const Element& a);
// (f (x) f) applied to every factor of a tensor (f even).
TensorElement substitute_factors(const GeneratorMap& map, const TensorElement& t);

// Counit: kills every generator.
Coeff counit(const Element& a);
// (eps (x) id) and (id (x) eps) on arity-2 tensors.
Element counit_left(const TensorElement& t);
Element counit_right(const TensorElement& t);

}  // namespace syang
