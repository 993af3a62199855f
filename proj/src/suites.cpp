#include "syang/suites.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "syang/errors.hpp"

namespace syang {

RelationSet select_families(const RelationSet& rs, const std::vector<std::string>& prefixes) {
    if (prefixes.empty()) return rs;
    RelationSet out = rs;
    out.relations.clear();
    for (auto& r : rs.relations) {
        std::string fam = r.label.substr(0, r.label.find('('));
        if (std::find(prefixes.begin(), prefixes.end(), fam) != prefixes.end()) out.relations.push_back(r);
    }
    return out;
}

Report verify_hom_jobs(const GeneratorMap& map, const RelationSet& src, const RelationSet& tgt,
                       const IdealOptions& opt, int jobs) {
    size_t n = src.relations.size();
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (jobs == 1) return verify_hom(map, src, tgt, opt);
    std::vector<Report> parts(jobs);
    std::vector<std::exception_ptr> errs(jobs);
    std::vector<std::thread> th;
    for (int k = 0; k < jobs; ++k)
        th.emplace_back([&, k] {
            try {
                RelationSet chunk = src;
                chunk.relations.clear();
                for (size_t r = k; r < n; r += jobs) chunk.relations.push_back(src.relations[r]);
                parts[k] = verify_hom(map, chunk, tgt, opt);
            } catch (...) {
                errs[k] = std::current_exception();
            }
        });
    for (auto& t : th) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    Report rep;
    rep.name = parts[0].name;
    for (size_t r = 0; r < n; ++r) rep.entries.push_back(parts[r % jobs].entries[r / jobs]);
    return rep;
}

Report verify_kac_moody(const RootDatum& rd, int N) {
    return check_relations(realize(rd, rd.affine ? N : 0), kac_moody_relations(rd));
}

Report verify_classical_reflection(const RootDatum& rd, int i, int L, int jobs) {
    auto c = classical_reflection_map(rd, i);
    auto src = kac_moody_relations(c.source);
    auto tgt = kac_moody_relations(c.target);
    IdealOptions opt;
    opt.L = L;
    Report rep = verify_hom_jobs(c.map, src, tgt, opt, jobs);
    rep.name = "classical-reflection(" + std::to_string(i) + ")";
    auto real = realize(c.target, c.target.affine ? 2 : 0);
    for (size_t k = 0; k < src.relations.size(); ++k) {
        auto& e = rep.entries[k];
        auto m = eval(real, substitute(c.map, src.relations[k].element));
        if (m.overflow()) {
            e.verdict = "overflow";
        } else if (!m.is_zero()) {
            e.verdict = "fail";
            e.detail = "matrix image is nonzero";
        } else {
            e.detail = "matrix image vanishes" + (e.detail.empty() ? "" : "; " + e.detail);
        }
    }
    return rep;
}

Report verify_quantum_reflection(const RootDatum& rd, int i, const std::vector<std::string>& families, int L,
                                 int jobs) {
    auto q = quantum_reflection(rd, i);
    IdealOptions opt;
    opt.L = L;
    Report rep = verify_hom_jobs(q.map, select_families(minimalistic_relations(rd), families),
                                 minimalistic_relations(q.target), opt, jobs);
    rep.name = "quantum-reflection(" + std::to_string(i) + ")";
    return rep;
}

Report verify_drinfeld_lift(const RootDatum& rd, int R, int rs_max, int L, int jobs) {
    IdealOptions opt;
    opt.L = L;
    Report rep = verify_hom_jobs(drinfeld_lift(rd, R), drinfeld_relations_bounded(rd, R, rs_max),
                                 minimalistic_relations(rd), opt, jobs);
    rep.name = "drinfeld-lift";
    return rep;
}

}  // namespace syang
