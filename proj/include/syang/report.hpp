#pragma once

#include <string>
#include <vector>

namespace syang {

// Verdict strings: "pass", "member", "fail", "overflow", "not-found-at-bound", "inconclusive".
struct ReportEntry {
    std::string label;
    std::string verdict;
    std::string detail;
    std::string witness;
    std::vector<std::string> support;
    int L = -1;
    double elapsed_ms = 0;

    bool ok() const { return verdict == "pass" || verdict == "member"; }
    bool failed() const { return verdict == "fail"; }
};

struct Report {
    std::string name;
    std::vector<ReportEntry> entries;

    bool all_ok() const;
    size_t count_ok() const;
    // 0 verified, 1 violation, 2 inconclusive.
    int exit_code() const;
    std::string to_json() const;
    std::string to_text() const;
    void append(const Report& o);
};

}  // namespace syang
