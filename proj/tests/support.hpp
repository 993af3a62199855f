#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "syang/parser.hpp"
#include "syang/roots.hpp"

namespace testsupport {

inline syang::Element P(const syang::RootDatum& rd, const std::string& s) { return syang::parse_element(s, rd); }
inline syang::TensorElement PT(const syang::RootDatum& rd, const std::string& s) {
    return syang::parse_tensor(s, rd);
}

// eps/delta weight from signed 1-based positions: {+1,-2} = eps_1 - eps_2 (m eps letters first).
inline syang::WeightVector eps_delta(int m, int n, std::vector<std::pair<char, int>> plus,
                                     std::vector<std::pair<char, int>> minus, int imag = 0) {
    syang::WeightVector w(m, n);
    for (auto [c, k] : plus) (c == 'e' ? w.eps : w.delta)[k - 1] += 1;
    for (auto [c, k] : minus) (c == 'e' ? w.eps : w.delta)[k - 1] -= 1;
    w.imaginary_deg = imag;
    return w;
}

// All E/D words with m E's and n D's.
inline std::vector<std::string> shuffles(int m, int n) {
    std::string s = std::string(m, 'E') + std::string(n, 'D');
    std::sort(s.begin(), s.end());
    std::vector<std::string> out;
    do out.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    return out;
}

}  // namespace testsupport
