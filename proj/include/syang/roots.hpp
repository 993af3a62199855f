#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace syang {

using Q = mpq_class;

// Coefficients on eps_1..eps_m, delta_1..delta_n and the null root.
struct WeightVector {
    std::vector<int> eps;
    std::vector<int> delta;
    int imaginary_deg = 0;

    WeightVector() = default;
    WeightVector(int m, int n) : eps(m, 0), delta(n, 0) {}

    bool is_zero() const;
    WeightVector operator+(const WeightVector& o) const;
    WeightVector operator-(const WeightVector& o) const;
    WeightVector operator-() const;
    WeightVector scaled(int k) const;
    bool operator==(const WeightVector& o) const = default;
    auto operator<=>(const WeightVector& o) const = default;
};

int bilinear(const WeightVector& a, const WeightVector& b);

// Letter k of the word: true for a delta weight.
struct RootDatum {
    std::string word;  // normalized upper case
    bool affine = false;
    int m = 0;
    int n = 0;
    // Finite nodes 1..N-1 at positions 0..N-2, alpha_0 (affine) stored last.
    std::vector<WeightVector> simple_roots;
    std::vector<int> parity;

    int size() const { return static_cast<int>(word.size()); }
    int num_nodes() const { return static_cast<int>(simple_roots.size()); }
    // Node labels in storage order: 1..N-1 then 0.
    int node_label(int pos) const;
    int node_pos(int label) const;
    bool has_node(int label) const;
    std::vector<int> node_labels() const;
    const WeightVector& root(int label) const { return simple_roots[node_pos(label)]; }
    int root_parity(int label) const { return parity[node_pos(label)]; }
    // Weight w_k (1-based position in the word).
    WeightVector weight(int k) const;
    bool is_delta(int k) const { return word[k - 1] == 'D'; }
    // Cyclic neighbours (affine) or chain neighbours.
    std::vector<int> neighbours(int label) const;
    int next_node(int label) const;  // label+1 (cyclic when affine); -1 if none
    int prev_node(int label) const;
    int pair(int i, int j) const { return bilinear(root(i), root(j)); }
    bool operator==(const RootDatum& o) const { return word == o.word && affine == o.affine; }
};

RootDatum build_root_datum(const std::string& word, bool affine);

struct CartanMatrix {
    std::vector<int> labels;
    std::vector<std::vector<int>> entries;
    std::vector<int> parity;
};

CartanMatrix cartan_matrix(const RootDatum& rd);

struct DiagramNode {
    int label;
    bool grey;
};

struct Diagram {
    std::vector<DiagramNode> nodes;
    std::vector<std::pair<int, int>> edges;  // labels, first < second in storage order
    std::string to_dot(const std::string& name = "dynkin") const;
    std::string to_ascii() const;
};

Diagram dynkin_diagram(const RootDatum& rd);

struct PositiveRoot {
    WeightVector weight;
    int parity;
    int multiplicity;
};

std::vector<PositiveRoot> positive_roots(const RootDatum& rd, int loop_cutoff);

// Real-root test: one +1 and one -1 among the eps/delta coefficients.
// Finite data additionally require imaginary degree zero.
bool is_real_root(const RootDatum& rd, const WeightVector& w);
// Parity of a real root.
int root_parity(const RootDatum& rd, const WeightVector& w);

std::string weight_to_string(const WeightVector& w);

}  // namespace syang
