#pragma once

#include <array>
#include <string>
#include <vector>

#include "syang/roots.hpp"
#include "syang/superfree.hpp"
#include "syang/weyl.hpp"

namespace syang {

struct Relation {
    std::string label;
    Element element;
};

struct RelationSet {
    std::string name;
    RootDatum rd;
    std::vector<Gen> catalog;
    std::vector<Relation> relations;

    const Relation* find(const std::string& label) const;
    std::string to_json() const;
};

// Generator helpers with parity read off the datum; sign = +1 / -1 picks x+ / x-.
Gen xgen(const RootDatum& rd, int sign, int label, int level);
Element X(const RootDatum& rd, int sign, int label, int level = 0);
Element Hc(int label, int level = 0);
Element Ht(int label);
// h(i,1) - (hbar/2) h(i,0)^2
Element htilde_expansion(int label);

RelationSet kac_moody_relations(const RootDatum& rd);
RelationSet minimalistic_relations(const RootDatum& rd);
RelationSet drinfeld_relations(const RootDatum& rd, int R);
// Drinfeld families restricted to family indices with r + s <= rs_max.
RelationSet drinfeld_relations_bounded(const RootDatum& rd, int R, int rs_max);

// Minimalistic catalog: h(i,0), h(i,1), x+-(i,0), x+-(i,1), plus ht(i,1) as a derived letter.
std::vector<Gen> minimalistic_catalog(const RootDatum& rd, bool with_htilde = true);

// Free sign parameters of the odd quantum reflection. Defaults give an algebra
// homomorphism; see paper_literal() for the printed table.
struct OddReflectionSigns {
    int self_plus = -1;   // T(x+_i) = self_plus * x-_b
    int self_minus = 1;   // T(x-_i) = self_minus * x+_b
    int self1_plus_corr = 1;    // T(x+_{i,1}) = self_plus x-_{b,1} + c (hbar/2){h_b, x-_b}
    int self1_minus_corr = -1;  // T(x-_{i,1}) = self_minus x+_{b,1} + c (hbar/2){h_b, x+_b}
    int ht_self_corr = 0;       // T(ht_i) = -ht_b + c hbar {x+_b, x-_b}
    // T(ht_j) carries c (hbar/2){x+_b, x-_b} with c = a_ij unless fixed here.
    int ht_neighbor_fixed = 0;
    // x- neighbour sign multiplies the value forced by [T x+_j, T x-_j] = h_b + h_bj.
    bool solve_neighbor_minus = true;
    static OddReflectionSigns paper_literal();
};

struct EvenReflectionSigns {
    // Mirror (a_ii = -2) corrections, in units of hbar/2 and hbar.
    int mirror_self1_corr = -1;
    int mirror_ht_self_corr = 1;
    int mirror_ht_neighbor = -1;
};

struct QuantumReflection {
    RootDatum source, target;
    GeneratorMap map;
    ReflectionKind kind;
};

QuantumReflection quantum_reflection(const RootDatum& rd, int i, const OddReflectionSigns& odd = {},
                                     const EvenReflectionSigns& even = {});

// Lie-level map from the reflected datum back to rd (level 0 only), odd i.
struct ClassicalReflection {
    RootDatum source, target;  // source = reflected datum, target = rd
    GeneratorMap map;
};
ClassicalReflection classical_reflection_map(const RootDatum& rd, int i);

// Drinfeld generators up to level R in terms of minimalistic generators.
// literal_h reproduces the printed index shift h_{i,k+1} = [x+_{i,k}, x-_{i,0}].
GeneratorMap drinfeld_lift(const RootDatum& rd, int R, bool literal_h = false);

struct SerreBlock {
    std::array<std::array<int, 3>, 3> matrix;
    long determinant;
};
// rows are node labels, columns j-1, j, j+1.
SerreBlock serre_block_determinant(const RootDatum& rd, int j, const std::array<int, 3>& rows);

std::string map_to_json(const GeneratorMap& m);

}  // namespace syang
