#include "syang/parser.hpp"

#include <cctype>

#include "syang/errors.hpp"

namespace syang {

namespace {

class Parser {
public:
    Parser(const std::string& s, const RootDatum& rd) : s_(s), rd_(rd) {}

    Parsed top() {
        Parsed r = sum(true);
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    const std::string& s_;
    const RootDatum& rd_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(const char* w) {
        skip();
        size_t n = std::char_traits<char>::length(w);
        if (s_.compare(pos_, n, w) != 0) return false;
        pos_ += n;
        return true;
    }
    mpz_class nat() {
        skip();
        size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected a natural number");
        return mpz_class(s_.substr(b, pos_ - b));
    }
    int small_nat() {
        mpz_class v = nat();
        if (v > 1000000) fail("index too large");
        return static_cast<int>(v.get_si());
    }

    // sum := tterm (('+'|'-') tterm)*, with '@' only when allowed.
    Parsed sum(bool tensors) {
        bool neg = accept('-');
        if (!neg) accept('+');
        Parsed acc = tterm(tensors);
        if (neg) acc = negate(acc);
        for (;;) {
            if (accept('+'))
                acc = add(acc, tterm(tensors), 1);
            else if (accept('-'))
                acc = add(acc, tterm(tensors), -1);
            else
                return acc;
        }
    }

    static Parsed negate(const Parsed& p) {
        if (auto* e = std::get_if<Element>(&p)) return -*e;
        return -std::get<TensorElement>(p);
    }

    Parsed add(const Parsed& a, const Parsed& b, int sign) {
        bool ta = std::holds_alternative<TensorElement>(a), tb = std::holds_alternative<TensorElement>(b);
        if (!ta && !tb) {
            const Element& y = std::get<Element>(b);
            return sign > 0 ? std::get<Element>(a) + y : std::get<Element>(a) - y;
        }
        if (ta != tb) fail("mixing tensors and plain elements");
        const auto& x = std::get<TensorElement>(a);
        const auto& y = std::get<TensorElement>(b);
        if (x.arity() != y.arity()) fail("tensor arity mismatch");
        return sign > 0 ? x + y : x - y;
    }

    Parsed tterm(bool tensors) {
        Element first = term();
        if (!tensors || !peek('@')) return first;
        std::vector<Element> f{first};
        while (accept('@')) f.push_back(term());
        return TensorElement::pure(f);
    }

    Element term() {
        Element acc = power();
        while (peek('*') || peek('.')) {
            ++pos_;
            acc = acc * power();
        }
        return acc;
    }

    Element power() {
        Element base = factor();
        while (accept('^')) {
            int k = small_nat();
            base = syang::power(base, k);
        }
        return base;
    }

    Element factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num = nat();
            Q q(num);
            if (peek('/')) {
                ++pos_;
                mpz_class den = nat();
                if (den == 0) fail("zero denominator");
                q = Q(num, den);
                q.canonicalize();
            }
            return Element(Coeff(q));
        }
        if (accept('(')) {
            Element e = std::get<Element>(sum(false));
            expect(')');
            return e;
        }
        if (accept('[')) {
            Element a = std::get<Element>(sum(false));
            expect(',');
            Element b = std::get<Element>(sum(false));
            expect(']');
            return super_bracket(a, b);
        }
        if (accept('{')) {
            Element a = std::get<Element>(sum(false));
            expect(',');
            Element b = std::get<Element>(sum(false));
            expect('}');
            return anti_bracket(a, b);
        }
        if (accept_word("hbar")) return Element(Coeff::hbar(1));
        if (accept_word("x+")) return atom(Kind::Xplus);
        if (accept_word("x-")) return atom(Kind::Xminus);
        if (accept_word("ht")) return atom(Kind::Htilde);
        if (accept_word("h")) return atom(Kind::H);
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Element atom(Kind k) {
        expect('(');
        size_t at = pos_;
        int i = small_nat();
        expect(',');
        int r = small_nat();
        expect(')');
        if (!rd_.has_node(i)) throw ParseError("unknown generator index " + std::to_string(i), at + 1);
        switch (k) {
            case Kind::Xplus: return Element(xplus(i, r, rd_.root_parity(i)));
            case Kind::Xminus: return Element(xminus(i, r, rd_.root_parity(i)));
            case Kind::Htilde:
                if (r != 1) throw ParseError("ht is defined at level 1 only", at + 1);
                return Element(htilde(i, 1));
            default: return Element(hgen(i, r));
        }
    }
};

}  // namespace

Parsed parse_expression(const std::string& text, const RootDatum& rd) { return Parser(text, rd).top(); }

Element parse_element(const std::string& text, const RootDatum& rd) {
    Parsed p = parse_expression(text, rd);
    if (auto* e = std::get_if<Element>(&p)) return *e;
    throw Error("expected a plain element, got a tensor");
}

TensorElement parse_tensor(const std::string& text, const RootDatum& rd) {
    Parsed p = parse_expression(text, rd);
    if (auto* t = std::get_if<TensorElement>(&p)) return *t;
    throw Error("expected a tensor expression");
}

}  // namespace syang
