#include "syang/roots.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "syang/errors.hpp"

namespace syang {

bool WeightVector::is_zero() const {
    return imaginary_deg == 0 && std::all_of(eps.begin(), eps.end(), [](int v) { return v == 0; }) &&
           std::all_of(delta.begin(), delta.end(), [](int v) { return v == 0; });
}

static void check_shape(const WeightVector& a, const WeightVector& b) {
    if (a.eps.size() != b.eps.size() || a.delta.size() != b.delta.size())
        throw Error("weight vectors over different (m,n)");
}

WeightVector WeightVector::operator+(const WeightVector& o) const {
    check_shape(*this, o);
    WeightVector r = *this;
    for (size_t i = 0; i < eps.size(); ++i) r.eps[i] += o.eps[i];
    for (size_t i = 0; i < delta.size(); ++i) r.delta[i] += o.delta[i];
    r.imaginary_deg += o.imaginary_deg;
    return r;
}

WeightVector WeightVector::operator-() const { return scaled(-1); }

WeightVector WeightVector::operator-(const WeightVector& o) const { return *this + (-o); }

WeightVector WeightVector::scaled(int k) const {
    WeightVector r = *this;
    for (auto& v : r.eps) v *= k;
    for (auto& v : r.delta) v *= k;
    r.imaginary_deg *= k;
    return r;
}

int bilinear(const WeightVector& a, const WeightVector& b) {
    check_shape(a, b);
    int s = 0;
    for (size_t i = 0; i < a.eps.size(); ++i) s += a.eps[i] * b.eps[i];
    for (size_t i = 0; i < a.delta.size(); ++i) s -= a.delta[i] * b.delta[i];
    return s;
}

int RootDatum::node_label(int pos) const {
    if (affine && pos == num_nodes() - 1) return 0;
    return pos + 1;
}

int RootDatum::node_pos(int label) const {
    if (!has_node(label)) throw Error("invalid simple root index " + std::to_string(label));
    return label == 0 ? num_nodes() - 1 : label - 1;
}

bool RootDatum::has_node(int label) const {
    if (label == 0) return affine;
    return label >= 1 && label <= size() - 1;
}

std::vector<int> RootDatum::node_labels() const {
    std::vector<int> out;
    for (int p = 0; p < num_nodes(); ++p) out.push_back(node_label(p));
    return out;
}

WeightVector RootDatum::weight(int k) const {
    WeightVector w(m, n);
    int e = 0, d = 0;
    for (int p = 0; p < k; ++p) (word[p] == 'E' ? e : d)++;
    if (word[k - 1] == 'E')
        w.eps[e - 1] = 1;
    else
        w.delta[d - 1] = 1;
    return w;
}

int RootDatum::next_node(int label) const {
    int N = size();
    if (affine) return (label + 1) % N;
    return label + 1 <= N - 1 ? label + 1 : -1;
}

int RootDatum::prev_node(int label) const {
    int N = size();
    if (affine) return (label + N - 1) % N;
    return label - 1 >= 1 ? label - 1 : -1;
}

std::vector<int> RootDatum::neighbours(int label) const {
    std::vector<int> out;
    for (int c : {prev_node(label), next_node(label)})
        if (c >= 0 && c != label && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    return out;
}

RootDatum build_root_datum(const std::string& word_in, bool affine) {
    if (word_in.empty()) throw Error("empty E/D word");
    RootDatum rd;
    for (char c : word_in) {
        char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (u != 'E' && u != 'D') throw Error(std::string("invalid letter '") + c + "' in word");
        rd.word.push_back(u);
    }
    if (affine && rd.word.size() < 3) throw Error("affine datum needs a word of length >= 3");
    rd.affine = affine;
    rd.m = static_cast<int>(std::count(rd.word.begin(), rd.word.end(), 'E'));
    rd.n = static_cast<int>(rd.word.size()) - rd.m;
    int N = rd.size();
    for (int k = 1; k < N; ++k) {
        rd.simple_roots.push_back(rd.weight(k) - rd.weight(k + 1));
        rd.parity.push_back(rd.word[k - 1] != rd.word[k] ? 1 : 0);
    }
    if (affine) {
        WeightVector a0 = rd.weight(N) - rd.weight(1);
        a0.imaginary_deg = 1;
        rd.simple_roots.push_back(a0);
        rd.parity.push_back(rd.word[N - 1] != rd.word[0] ? 1 : 0);
    }
    return rd;
}

CartanMatrix cartan_matrix(const RootDatum& rd) {
    CartanMatrix cm;
    cm.labels = rd.node_labels();
    cm.parity = rd.parity;
    int k = rd.num_nodes();
    cm.entries.assign(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) cm.entries[i][j] = bilinear(rd.simple_roots[i], rd.simple_roots[j]);
    return cm;
}

Diagram dynkin_diagram(const RootDatum& rd) {
    Diagram d;
    auto cm = cartan_matrix(rd);
    int k = rd.num_nodes();
    for (int p = 0; p < k; ++p) d.nodes.push_back({rd.node_label(p), rd.parity[p] == 1});
    for (int p = 0; p < k; ++p)
        for (int q = p + 1; q < k; ++q)
            if (cm.entries[p][q] != 0) d.edges.emplace_back(rd.node_label(p), rd.node_label(q));
    return d;
}

std::string Diagram::to_dot(const std::string& name) const {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (auto& nd : nodes) {
        os << "  a" << nd.label << " [label=\"alpha_" << nd.label << "\"";
        if (nd.grey) os << ", style=filled, fillcolor=gray";
        os << "];\n";
    }
    for (auto& [a, b] : edges) os << "  a" << a << " -- a" << b << ";\n";
    os << "}\n";
    return os.str();
}

std::string Diagram::to_ascii() const {
    // o = white, x = grey; chain order of storage, cycle marker when closed.
    std::ostringstream os;
    for (size_t p = 0; p < nodes.size(); ++p) {
        if (p) os << "---";
        os << (nodes[p].grey ? "(x)" : "(o)") << nodes[p].label;
    }
    bool closed = false;
    if (nodes.size() >= 3)
        for (auto& [a, b] : edges)
            if ((a == nodes.front().label && b == nodes.back().label) ||
                (b == nodes.front().label && a == nodes.back().label))
                closed = true;
    if (closed) os << " (cycle)";
    return os.str();
}

std::vector<PositiveRoot> positive_roots(const RootDatum& rd, int N) {
    if (N < 0) throw Error("negative loop cutoff");
    if (N > 0 && !rd.affine) throw Error("loop cutoff requires an affine datum");
    std::vector<PositiveRoot> out;
    int S = rd.size();
    auto par = [&](int a, int b) { return rd.word[a - 1] != rd.word[b - 1] ? 1 : 0; };
    for (int a = 1; a <= S; ++a)
        for (int b = a + 1; b <= S; ++b) out.push_back({rd.weight(a) - rd.weight(b), par(a, b), 1});
    for (int k = 1; k <= N; ++k) {
        for (int a = 1; a <= S; ++a)
            for (int b = 1; b <= S; ++b) {
                if (a == b) continue;
                auto w = rd.weight(a) - rd.weight(b);
                w.imaginary_deg = k;
                out.push_back({w, par(a, b), 1});
            }
        WeightVector im(rd.m, rd.n);
        im.imaginary_deg = k;
        out.push_back({im, 0, S - 1});
    }
    return out;
}

bool is_real_root(const RootDatum& rd, const WeightVector& w) {
    int plus = 0, minus = 0, other = 0;
    auto scan = [&](const std::vector<int>& v) {
        for (int c : v) {
            if (c == 1)
                ++plus;
            else if (c == -1)
                ++minus;
            else if (c != 0)
                ++other;
        }
    };
    scan(w.eps);
    scan(w.delta);
    if (plus != 1 || minus != 1 || other != 0) return false;
    return rd.affine || w.imaginary_deg == 0;
}

int root_parity(const RootDatum& rd, const WeightVector& w) {
    (void)rd;
    int e = 0, d = 0;
    for (int c : w.eps) e += c != 0;
    for (int c : w.delta) d += c != 0;
    return (e == 1 && d == 1) ? 1 : 0;
}

std::string weight_to_string(const WeightVector& w) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](int c, const std::string& name) {
        if (c == 0) return;
        if (c < 0)
            os << (first ? "-" : " - ");
        else if (!first)
            os << " + ";
        int a = c < 0 ? -c : c;
        if (a != 1) os << a << "*";
        os << name;
        first = false;
    };
    for (size_t i = 0; i < w.eps.size(); ++i) emit(w.eps[i], "e" + std::to_string(i + 1));
    for (size_t i = 0; i < w.delta.size(); ++i) emit(w.delta[i], "d" + std::to_string(i + 1));
    emit(w.imaginary_deg, "delta");
    if (first) os << "0";
    return os.str();
}

}  // namespace syang
