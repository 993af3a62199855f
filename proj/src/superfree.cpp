#include "syang/superfree.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "syang/errors.hpp"

namespace syang {

// ---------------------------------------------------------------- Coeff

Coeff::Coeff(const Q& q) {
    if (q != 0) c_.push_back(q);
    if (!c_.empty()) c_[0].canonicalize();
}

Coeff Coeff::hbar(int power, const Q& q) {
    Coeff r;
    if (q == 0) return r;
    r.c_.assign(power + 1, Q(0));
    r.c_[power] = q;
    r.c_[power].canonicalize();
    return r;
}

void Coeff::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Coeff::low_degree() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) return static_cast<int>(k);
    return -1;
}

bool Coeff::is_monomial() const {
    int nz = 0;
    for (auto& q : c_) nz += q != 0;
    return nz == 1;
}

Q Coeff::eval(const Q& h) const {
    Q r = 0;
    for (size_t k = c_.size(); k-- > 0;) r = r * h + c_[k];
    return r;
}

Coeff Coeff::operator+(const Coeff& o) const {
    Coeff r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = at(static_cast<int>(k)) + o.at(static_cast<int>(k));
    r.trim();
    return r;
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator-() const {
    Coeff r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Coeff Coeff::operator*(const Coeff& o) const {
    Coeff r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Q(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

Coeff Coeff::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Coeff r;
    if (k > 0) {
        r.c_.assign(k, Q(0));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }
    if (low_degree() < -k) throw Error("negative hbar power after shift");
    r.c_.assign(c_.begin() - k, c_.end());
    return r;
}

namespace {

std::string rational_text(const Q& q) {
    // Non-integers are parenthesized so the printed form parses back as a factor.
    if (q.get_den() == 1) return q.get_num().get_str();
    return "(" + q.get_str() + ")";
}

std::string monomial_text(const Q& absq, int k) {
    std::string s;
    if (absq != 1) s = rational_text(absq);
    if (k > 0) {
        if (!s.empty()) s += "*";
        s += "hbar";
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
}

}  // namespace

std::string Coeff::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Q& q = c_[k];
        if (q == 0) continue;
        Q a = abs(q);
        if (first)
            out += q < 0 ? "-" : "";
        else
            out += q < 0 ? " - " : " + ";
        auto m = monomial_text(a, k);
        out += m.empty() ? "1" : m;
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------- Gen

std::string Gen::to_string() const {
    std::string name;
    switch (kind) {
        case Kind::H: name = "h"; break;
        case Kind::Htilde: name = "ht"; break;
        case Kind::Xplus: name = "x+"; break;
        case Kind::Xminus: name = "x-"; break;
    }
    return name + "(" + std::to_string(root) + "," + std::to_string(level) + ")";
}

Gen xplus(int root, int level, int parity) { return {Kind::Xplus, root, level, parity}; }
Gen xminus(int root, int level, int parity) { return {Kind::Xminus, root, level, parity}; }
Gen hgen(int root, int level) { return {Kind::H, root, level, 0}; }
Gen htilde(int root, int level) { return {Kind::Htilde, root, level, 0}; }

int word_parity(const Word& w) {
    int p = 0;
    for (auto& g : w) p ^= g.parity;
    return p;
}

int word_degree(const Word& w) {
    int d = 0;
    for (auto& g : w) d += g.degree();
    return d;
}

std::string word_to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ".";
        s += w[i].to_string();
    }
    return s;
}

// ---------------------------------------------------------------- Element

Element::Element(const Coeff& c) {
    if (!c.is_zero()) t_[Word{}] = c;
}

Element::Element(const Gen& g) { t_[Word{g}] = Coeff(1); }

Element::Element(const Word& w, const Coeff& c) {
    if (!c.is_zero()) t_[w] = c;
}

Coeff Element::coefficient(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? Coeff() : it->second;
}

void Element::add_term(const Word& w, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(w, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

Element& Element::operator+=(const Element& o) {
    for (auto& [w, c] : o.t_) add_term(w, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    for (auto& [w, c] : o.t_) add_term(w, -c);
    return *this;
}

Element Element::operator+(const Element& o) const {
    Element r = *this;
    r += o;
    return r;
}

Element Element::operator-(const Element& o) const {
    Element r = *this;
    r -= o;
    return r;
}

Element Element::operator-() const { return scaled(Coeff(-1)); }

Element Element::operator*(const Element& o) const {
    Element r;
    for (auto& [w1, c1] : t_)
        for (auto& [w2, c2] : o.t_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            r.add_term(w, c1 * c2);
        }
    return r;
}

Element Element::scaled(const Coeff& c) const {
    Element r;
    if (c.is_zero()) return r;
    for (auto& [w, k] : t_) r.add_term(w, k * c);
    return r;
}

Element Element::parity_part(int p) const {
    Element r;
    for (auto& [w, c] : t_)
        if (word_parity(w) == p) r.t_.emplace(w, c);
    return r;
}

int Element::parity() const {
    int p = -2;
    for (auto& [w, c] : t_) {
        int q = word_parity(w);
        if (p == -2)
            p = q;
        else if (p != q)
            return -1;
    }
    return p == -2 ? 0 : p;
}

int Element::max_length() const {
    int L = 0;
    for (auto& [w, c] : t_) L = std::max(L, static_cast<int>(w.size()));
    return L;
}

std::vector<Gen> Element::generators() const {
    std::set<Gen> s;
    for (auto& [w, c] : t_) s.insert(w.begin(), w.end());
    return {s.begin(), s.end()};
}

namespace {

// Sign-split rendering of one term; the sign goes to the caller.
std::pair<bool, std::string> term_text(const Coeff& c, const std::string& body, bool body_is_unit) {
    if (c.is_monomial()) {
        int k = c.degree();
        Q q = c.at(k);
        bool neg = q < 0;
        std::string m = monomial_text(abs(q), k);
        if (body_is_unit) return {neg, m.empty() ? "1" : m};
        if (m.empty()) return {neg, body};
        return {neg, m + "*" + body};
    }
    std::string p = "(" + c.to_string() + ")";
    return {false, body_is_unit ? p : p + "*" + body};
}

}  // namespace

std::string Element::to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [w, c] : t_) {
        auto [neg, txt] = term_text(c, word_to_string(w), w.empty());
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += txt;
        first = false;
    }
    return out;
}

Element operator*(const Coeff& c, const Element& e) { return e.scaled(c); }

Element multiply(const Element& a, const Element& b) { return a * b; }

namespace {

template <class T, class F>
T split_bracket(const T& a, const T& b, F&& f) {
    T r = a.parity_part(0);
    r = r - r;  // keeps arity for tensors
    for (int pa = 0; pa < 2; ++pa) {
        auto ap = a.parity_part(pa);
        if (ap.is_zero()) continue;
        for (int pb = 0; pb < 2; ++pb) {
            auto bp = b.parity_part(pb);
            if (bp.is_zero()) continue;
            r += f(ap, bp, pa * pb);
        }
    }
    return r;
}

}  // namespace

Element super_bracket(const Element& a, const Element& b) {
    return split_bracket(a, b, [](const Element& x, const Element& y, int s) {
        return s ? x * y + y * x : x * y - y * x;
    });
}

Element anti_bracket(const Element& a, const Element& b) {
    return split_bracket(a, b, [](const Element& x, const Element& y, int s) {
        return s ? x * y - y * x : x * y + y * x;
    });
}

Element ad_pow(const Element& a, int k, const Element& b) {
    if (k < 0) throw Error("negative ad power");
    Element r = b;
    for (int i = 0; i < k; ++i) r = super_bracket(a, r);
    return r;
}

Element power(const Element& a, int k) {
    if (k < 0) throw Error("negative power");
    Element r = Element::one();
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

// ---------------------------------------------------------------- TensorElement

TensorElement TensorElement::pure(const std::vector<Element>& f) {
    TensorElement r(static_cast<int>(f.size()));
    std::vector<std::pair<TWord, Coeff>> acc{{TWord{}, Coeff(1)}};
    for (auto& e : f) {
        std::vector<std::pair<TWord, Coeff>> next;
        for (auto& [tw, c] : acc)
            for (auto& [w, k] : e.terms()) {
                TWord t = tw;
                t.push_back(w);
                next.emplace_back(std::move(t), c * k);
            }
        acc = std::move(next);
    }
    for (auto& [tw, c] : acc) r.add_term(tw, c);
    return r;
}

void TensorElement::add_term(const TWord& w, const Coeff& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(w.size()) != arity_) throw Error("tensor arity mismatch");
    auto [it, inserted] = t_.emplace(w, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

Coeff TensorElement::coefficient(const TWord& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? Coeff() : it->second;
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    if (o.arity_ != arity_ && !o.is_zero()) throw Error("tensor arity mismatch");
    for (auto& [w, c] : o.t_) add_term(w, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
    if (o.arity_ != arity_ && !o.is_zero()) throw Error("tensor arity mismatch");
    for (auto& [w, c] : o.t_) add_term(w, -c);
    return *this;
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    TensorElement r = *this;
    r += o;
    return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    TensorElement r = *this;
    r -= o;
    return r;
}

TensorElement TensorElement::operator-() const { return scaled(Coeff(-1)); }

TensorElement TensorElement::operator*(const TensorElement& o) const {
    if (o.arity_ != arity_) throw Error("tensor arity mismatch");
    TensorElement r(arity_);
    for (auto& [a, ca] : t_) {
        for (auto& [b, cb] : o.t_) {
            // (a1 (x) a2 ..)(b1 (x) b2 ..): b_k passes a_l for l > k.
            int sign = 0;
            for (int k = 0; k < arity_; ++k) {
                int pb = word_parity(b[k]);
                if (!pb) continue;
                for (int l = k + 1; l < arity_; ++l) sign ^= word_parity(a[l]);
            }
            TWord w(arity_);
            for (int k = 0; k < arity_; ++k) {
                w[k] = a[k];
                w[k].insert(w[k].end(), b[k].begin(), b[k].end());
            }
            Coeff c = ca * cb;
            r.add_term(w, sign ? -c : c);
        }
    }
    return r;
}

TensorElement TensorElement::scaled(const Coeff& c) const {
    TensorElement r(arity_);
    if (c.is_zero()) return r;
    for (auto& [w, k] : t_) r.add_term(w, k * c);
    return r;
}

TensorElement TensorElement::parity_part(int p) const {
    TensorElement r(arity_);
    for (auto& [w, c] : t_) {
        int q = 0;
        for (auto& x : w) q ^= word_parity(x);
        if (q == p) r.t_.emplace(w, c);
    }
    return r;
}

int TensorElement::parity() const {
    int p = -2;
    for (auto& [w, c] : t_) {
        int q = 0;
        for (auto& x : w) q ^= word_parity(x);
        if (p == -2)
            p = q;
        else if (p != q)
            return -1;
    }
    return p == -2 ? 0 : p;
}

std::string TensorElement::to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [w, c] : t_) {
        std::string body;
        for (size_t k = 0; k < w.size(); ++k) {
            if (k) body += " @ ";
            body += word_to_string(w[k]);
        }
        auto [neg, txt] = term_text(c, body, false);
        if (c.is_monomial() && c.degree() == 0 && abs(c.at(0)) == 1) txt = body;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += txt;
        first = false;
    }
    return out;
}

TensorElement tensor(const Element& a, const Element& b) { return TensorElement::pure({a, b}); }

TensorElement tensor3(const Element& a, const Element& b, const Element& c) {
    return TensorElement::pure({a, b, c});
}

TensorElement boxed(const Element& a) { return tensor(a, Element::one()) + tensor(Element::one(), a); }

TensorElement super_bracket(const TensorElement& a, const TensorElement& b) {
    return split_bracket(a, b, [](const TensorElement& x, const TensorElement& y, int s) {
        return s ? x * y + y * x : x * y - y * x;
    });
}

TensorElement commutator(const TensorElement& a, const TensorElement& b) { return a * b - b * a; }

TensorElement flip(const TensorElement& t) {
    if (t.arity() != 2) throw Error("flip needs arity 2");
    TensorElement r(2);
    for (auto& [w, c] : t.terms()) {
        int s = word_parity(w[0]) & word_parity(w[1]);
        r.add_term({w[1], w[0]}, s ? -c : c);
    }
    return r;
}

TensorElement divide_hbar(const TensorElement& t, int k) {
    TensorElement r(t.arity());
    for (auto& [w, c] : t.terms()) r.add_term(w, c.shifted(-k));
    return r;
}

// ---------------------------------------------------------------- maps

const Element& GeneratorMap::at(const Gen& g) const {
    auto it = images.find(g);
    if (it == images.end()) throw Error("unmapped generator " + g.to_string());
    return it->second;
}

Element substitute(const GeneratorMap& map, const Element& a) {
    Element r;
    std::map<Gen, const Element*> cache;
    for (auto& [w, c] : a.terms()) {
        Element prod(c);
        for (auto& g : w) {
            const Element& img = map.at(g);
            int p = img.parity();
            if (!img.is_zero() && p != g.parity)
                throw Error("parity mismatch in image of " + g.to_string());
            prod = prod * img;
        }
        r += prod;
    }
    return r;
}

TensorElement substitute(const TensorGeneratorMap& map, const Element& a) {
    TensorElement r(map.arity);
    for (auto& [w, c] : a.terms()) {
        std::vector<Element> units(map.arity, Element::one());
        TensorElement prod = TensorElement::pure(units).scaled(c);
        for (auto& g : w) {
            auto it = map.images.find(g);
            if (it == map.images.end()) throw Error("unmapped generator " + g.to_string());
            prod = prod * it->second;
        }
        r += prod;
    }
    return r;
}

TensorElement substitute_factors(const GeneratorMap& map, const TensorElement& t) {
    TensorElement r(t.arity());
    for (auto& [w, c] : t.terms()) {
        std::vector<Element> f;
        for (auto& x : w) f.push_back(substitute(map, Element(x)));
        r += TensorElement::pure(f).scaled(c);
    }
    return r;
}

Coeff counit(const Element& a) { return a.coefficient(Word{}); }

Element counit_left(const TensorElement& t) {
    Element r;
    for (auto& [w, c] : t.terms())
        if (w[0].empty()) r.add_term(w[1], c);
    return r;
}

Element counit_right(const TensorElement& t) {
    Element r;
    for (auto& [w, c] : t.terms())
        if (w[1].empty()) r.add_term(w[0], c);
    return r;
}

}  // namespace syang
