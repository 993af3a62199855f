#include "syang/weyl.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "json.hpp"

#include "syang/errors.hpp"

namespace syang {

namespace {

int coefficient_at(const RootDatum& rd, const WeightVector& w, int p) {
    int e = 0, d = 0;
    for (int q = 0; q < p; ++q) (rd.word[q] == 'E' ? e : d)++;
    return rd.word[p - 1] == 'E' ? w.eps[e - 1] : w.delta[d - 1];
}

}  // namespace

std::vector<int> simple_root_coordinates(const RootDatum& rd, const WeightVector& w) {
    int N = rd.size();
    int sum = 0;
    for (int p = 1; p <= N; ++p) sum += coefficient_at(rd, w, p);
    if (sum != 0) throw Error("weight is not in the root lattice");
    if (!rd.affine && w.imaginary_deg != 0) throw Error("imaginary part on a finite datum");
    std::vector<int> c(rd.num_nodes(), 0);
    int k = rd.affine ? w.imaginary_deg : 0;
    int partial = 0;
    for (int p = 1; p < N; ++p) {
        partial += coefficient_at(rd, w, p);
        c[rd.node_pos(p)] = partial + k;
    }
    if (rd.affine) c[rd.node_pos(0)] = k;
    return c;
}

WeightVector from_simple_root_coordinates(const RootDatum& rd, const std::vector<int>& c) {
    WeightVector w(rd.m, rd.n);
    for (int p = 0; p < rd.num_nodes(); ++p)
        if (c[p]) w = w + rd.simple_roots[p].scaled(c[p]);
    return w;
}

WeightVector transport_weight(const RootDatum& rd, int i, const RootDatum& target, const WeightVector& w) {
    int N = rd.size();
    WeightVector out(target.m, target.n);
    int imag = w.imaginary_deg;
    for (int p = 1; p <= N; ++p) {
        int c = coefficient_at(rd, w, p);
        if (!c) continue;
        int q = p, shift = 0;
        if (i == 0) {
            if (p == 1) q = N, shift = 1;
            if (p == N) q = 1, shift = -1;
        } else {
            if (p == i) q = i + 1;
            if (p == i + 1) q = i;
        }
        out = out + target.weight(q).scaled(c);
        imag += c * shift;
    }
    out.imaginary_deg = imag;
    return out;
}

ReflectionResult reflect_simple(const RootDatum& rd, int i) {
    if (!rd.has_node(i)) throw Error("invalid reflection index " + std::to_string(i));
    const WeightVector& ai = rd.root(i);
    ReflectionResult res;
    if (rd.root_parity(i) == 0) {
        res.kind = ReflectionKind::Even;
        res.new_datum = rd;
        int aa = bilinear(ai, ai);
        for (auto& aj : rd.simple_roots) {
            int num = 2 * bilinear(aj, ai);
            if (num % aa != 0) throw Error("non-integral even reflection");
            res.root_images.push_back(aj - ai.scaled(num / aa));
        }
        return res;
    }
    res.kind = ReflectionKind::Odd;
    std::string w = rd.word;
    int N = rd.size();
    if (i == 0)
        std::swap(w[0], w[N - 1]);
    else
        std::swap(w[i - 1], w[i]);
    res.new_datum = build_root_datum(w, rd.affine);
    for (int p = 0; p < rd.num_nodes(); ++p) {
        int j = rd.node_label(p);
        WeightVector img;
        if (j == i)
            img = -ai;
        else {
            WeightVector s = rd.simple_roots[p] + ai;
            img = is_real_root(rd, s) ? s : rd.simple_roots[p];
        }
        res.root_images.push_back(transport_weight(rd, i, res.new_datum, img));
    }
    return res;
}

WordResult apply_word(const GroupoidWord& gw) {
    WordResult cur{gw.start, gw.start.simple_roots};
    for (size_t step = 0; step < gw.indices.size(); ++step) {
        int i = gw.indices[step];
        if (!cur.datum.has_node(i))
            throw Error("invalid index " + std::to_string(i) + " at step " + std::to_string(step + 1));
        auto r = reflect_simple(cur.datum, i);
        std::vector<WeightVector> imgs;
        for (auto& w : cur.root_images) {
            auto c = simple_root_coordinates(cur.datum, w);
            WeightVector acc(r.new_datum.m, r.new_datum.n);
            for (size_t p = 0; p < c.size(); ++p)
                if (c[p]) acc = acc + r.root_images[p].scaled(c[p]);
            imgs.push_back(acc);
        }
        cur.datum = r.new_datum;
        cur.root_images = std::move(imgs);
    }
    return cur;
}

OrbitGraph orbit_from(const RootDatum& start, int max_depth) {
    int N = start.size();
    if (N < 2) throw Error("orbit needs m+n >= 2");
    if (max_depth < 0) max_depth = 2 * N * N;
    std::map<std::string, int> depth;
    std::deque<std::string> queue;
    std::vector<std::tuple<std::string, std::string, int>> raw;
    depth[start.word] = 0;
    queue.push_back(start.word);
    while (!queue.empty()) {
        std::string w = queue.front();
        queue.pop_front();
        int d = depth[w];
        if (d >= max_depth) continue;
        auto rd = build_root_datum(w, start.affine);
        for (int lab : rd.node_labels()) {
            if (rd.root_parity(lab) == 0) continue;
            auto r = reflect_simple(rd, lab);
            raw.emplace_back(w, r.new_datum.word, lab);
            if (!depth.count(r.new_datum.word)) {
                depth[r.new_datum.word] = d + 1;
                queue.push_back(r.new_datum.word);
            }
        }
    }
    OrbitGraph g;
    std::map<std::string, int> idx;
    for (auto& [w, _] : depth) {
        idx[w] = static_cast<int>(g.nodes.size());
        g.nodes.push_back(w);
    }
    for (auto& [a, b, lab] : raw)
        if (idx.count(b)) g.edges.push_back({idx[a], idx[b], lab});
    std::sort(g.edges.begin(), g.edges.end(), [](auto& x, auto& y) {
        return std::tie(x.from, x.to, x.index) < std::tie(y.from, y.to, y.index);
    });
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                              [](auto& x, auto& y) { return x.from == y.from && x.to == y.to && x.index == y.index; }),
                  g.edges.end());
    return g;
}

OrbitGraph orbit(int m, int n, bool affine, int max_depth) {
    return orbit_from(build_root_datum(std::string(m, 'E') + std::string(n, 'D'), affine), max_depth);
}

std::string OrbitGraph::to_dot() const {
    std::ostringstream os;
    os << "digraph orbit {\n";
    for (size_t k = 0; k < nodes.size(); ++k) os << "  n" << k << " [label=\"" << nodes[k] << "\"];\n";
    for (auto& e : edges) os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.index << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string OrbitGraph::to_json() const {
    nlohmann::json j;
    j["schema"] = "syang/1";
    j["nodes"] = nodes;
    j["edges"] = nlohmann::json::array();
    for (auto& e : edges) j["edges"].push_back({e.from, e.to, e.index});
    return j.dump();
}

}  // namespace syang
