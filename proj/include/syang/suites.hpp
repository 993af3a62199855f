#pragma once

#include <string>
#include <vector>

#include "syang/idealcheck.hpp"
#include "syang/matrixrep.hpp"
#include "syang/presentations.hpp"
#include "syang/report.hpp"

namespace syang {

// Relations whose label starts with one of the prefixes (all when empty).
RelationSet select_families(const RelationSet& rs, const std::vector<std::string>& prefixes);

// Images of src relations under map, checked against the ideal of tgt; jobs > 1 splits the
// relation list over threads with one engine each. Entry order follows src.
Report verify_hom_jobs(const GeneratorMap& map, const RelationSet& src, const RelationSet& tgt,
                       const IdealOptions& opt, int jobs = 1);

// Every Kac-Moody relation evaluated in the loop (affine) or supermatrix (finite) realization.
Report verify_kac_moody(const RootDatum& rd, int N);

// Lie-level reflection map at odd i: matrix evaluation of every relation image, then ideal membership.
Report verify_classical_reflection(const RootDatum& rd, int i, int L, int jobs = 1);

// Quantum reflection at i applied to the minimalistic relations (restricted to families).
Report verify_quantum_reflection(const RootDatum& rd, int i, const std::vector<std::string>& families, int L,
                                 int jobs = 1);

// Drinfeld relations with r + s <= rs_max under the lift, in the minimalistic ideal.
Report verify_drinfeld_lift(const RootDatum& rd, int R, int rs_max, int L, int jobs = 1);

}  // namespace syang
