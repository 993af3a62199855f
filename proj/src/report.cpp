#include "syang/report.hpp"

#include <sstream>

#include "json.hpp"

namespace syang {

bool Report::all_ok() const {
    for (auto& e : entries)
        if (!e.ok()) return false;
    return true;
}

size_t Report::count_ok() const {
    size_t k = 0;
    for (auto& e : entries) k += e.ok();
    return k;
}

int Report::exit_code() const {
    bool inconclusive = false;
    for (auto& e : entries) {
        if (e.failed()) return 1;
        if (!e.ok()) inconclusive = true;
    }
    return inconclusive ? 2 : 0;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "syang/1";
    j["report"] = name;
    j["entries"] = nlohmann::ordered_json::array();
    for (auto& e : entries) {
        nlohmann::ordered_json r;
        r["relation_label"] = e.label;
        r["verdict"] = e.verdict;
        if (!e.detail.empty()) r["detail"] = e.detail;
        if (!e.witness.empty()) r["witness"] = e.witness;
        r["support"] = e.support;
        r["L"] = e.L;
        r["elapsed_ms"] = e.elapsed_ms;
        j["entries"].push_back(r);
    }
    return j.dump(2);
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << name << ": " << count_ok() << "/" << entries.size() << " ok\n";
    for (auto& e : entries) {
        os << "  [" << e.verdict << "] " << e.label;
        if (!e.detail.empty()) os << "  " << e.detail;
        os << "\n";
    }
    return os.str();
}

void Report::append(const Report& o) { entries.insert(entries.end(), o.entries.begin(), o.entries.end()); }

}  // namespace syang
