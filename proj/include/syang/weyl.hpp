#pragma once

#include <string>
#include <vector>

#include "syang/roots.hpp"

namespace syang {

enum class ReflectionKind { Even, Odd };

struct ReflectionResult {
    RootDatum new_datum;
    // Image of each simple root of the start datum (storage order), written in
    // the coordinates of new_datum.
    std::vector<WeightVector> root_images;
    ReflectionKind kind;
};

// Express a root-lattice weight in coordinates of the simple roots (storage order).
std::vector<int> simple_root_coordinates(const RootDatum& rd, const WeightVector& w);
WeightVector from_simple_root_coordinates(const RootDatum& rd, const std::vector<int>& c);

// Transport a weight of rd into the coordinates of the datum obtained by the
// odd reflection at node i (letter swap plus eps/delta relabeling).
WeightVector transport_weight(const RootDatum& rd, int i, const RootDatum& target, const WeightVector& w);

ReflectionResult reflect_simple(const RootDatum& rd, int i);

struct GroupoidWord {
    RootDatum start;
    std::vector<int> indices;
};

struct WordResult {
    RootDatum datum;
    std::vector<WeightVector> root_images;
};

WordResult apply_word(const GroupoidWord& w);

struct OrbitGraph {
    std::vector<std::string> nodes;  // sorted
    struct Edge {
        int from, to, index;
    };
    std::vector<Edge> edges;
    std::string to_dot() const;
    std::string to_json() const;
};

OrbitGraph orbit(int m, int n, bool affine, int max_depth = -1);
// Starting word for orbit: distinguished E^m D^n.
OrbitGraph orbit_from(const RootDatum& start, int max_depth = -1);

}  // namespace syang
