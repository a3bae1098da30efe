#include "kcof/segment_solver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kcof/error.hpp"

namespace kcof {

namespace {

void require_k1(const GameInstance& inst)
{
    if (inst.k() != 1) {
        fail(ErrorCode::Domain, "the segment algorithm applies to 1-COF games only (k = "
                                    + std::to_string(inst.k()) + ")");
    }
}

// Path lookups beyond this many source-sink visits are refused when the
// DP answer needs the exhaustive fallback.
constexpr std::size_t fallback_path_cap = 1'000'000;

} // namespace

std::string to_string(const SegmentKey& key)
{
    return "C(" + std::to_string(key.a + 1) + "," + std::to_string(key.b + 1) + "," + std::to_string(key.c + 1) + ")";
}

Segment build_segment(const GameInstance& inst, PlayerIndex a, PlayerIndex b, PlayerIndex c)
{
    require_k1(inst);
    const std::size_t n = inst.size();
    if (!(a <= b && b < c && c < n)) {
        fail(ErrorCode::InvalidArgument, "segment indices must satisfy a <= b < c <= n");
    }
    const auto& s = inst.beliefs();

    Segment seg;
    seg.key = {a, b, c};
    seg.opinions.resize(c - a + 1);
    auto z = [&](PlayerIndex p) -> Rational& { return seg.opinions[p - a]; };

    const Rational gap = s[b + 1] - s[b];
    z(b) = s[b] + gap / Rational(3);
    z(b + 1) = s[b] + Rational(2) * gap / Rational(3);
    for (PlayerIndex p = b; p-- > a;) {
        z(p) = midpoint(s[p], z(p + 1));
    }
    for (PlayerIndex p = b + 2; p <= c; ++p) {
        z(p) = midpoint(s[p], z(p - 1));
    }

    for (PlayerIndex p = a; p <= c; ++p) {
        seg.weight += abs(z(p) - s[p]);
    }

    seg.boundary_ok = a != 1 && c + 2 != n;

    seg.adjacent_consistent = true;
    for (PlayerIndex p = a + 1; p <= b; ++p) {
        if (abs(z(p - 1) - s[p]) < abs(z(p + 1) - s[p])) {
            seg.adjacent_consistent = false;
        }
    }
    for (PlayerIndex p = b + 1; p < c; ++p) {
        if (abs(z(p + 1) - s[p]) < abs(z(p - 1) - s[p])) {
            seg.adjacent_consistent = false;
        }
    }

    seg.pairwise_consistent = true;
    for (PlayerIndex p = a; p <= c && seg.pairwise_consistent; ++p) {
        const PlayerIndex designated = p <= b ? p + 1 : p - 1;
        const Rational d = abs(z(designated) - s[p]);
        for (PlayerIndex q = a; q <= c; ++q) {
            if (q != p && abs(z(q) - s[p]) < d) {
                seg.pairwise_consistent = false;
                break;
            }
        }
    }

    seg.discrepancy = seg.adjacent_consistent != seg.pairwise_consistent;
    seg.legit = seg.boundary_ok && seg.pairwise_consistent;
    return seg;
}

std::size_t SegmentGraph::edge_count() const
{
    std::size_t e = source_.size();
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        e += succ_[v].size() + (sink_[v] ? 1 : 0);
    }
    return e;
}

std::vector<std::size_t> SegmentGraph::topological_order() const
{
    // Kahn's algorithm; succeeds exactly when the graph is acyclic.
    std::vector<std::size_t> indegree(nodes_.size(), 0);
    for (const auto& out : succ_) {
        for (std::size_t u : out) {
            ++indegree[u];
        }
    }
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        if (indegree[v] == 0) {
            ready.push_back(v);
        }
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        const std::size_t v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (std::size_t u : succ_[v]) {
            if (--indegree[u] == 0) {
                ready.push_back(u);
            }
        }
    }
    if (order.size() != nodes_.size()) {
        fail(ErrorCode::Internal, "segment graph contains a cycle");
    }
    return order;
}

std::size_t SegmentGraph::find(const SegmentKey& key) const
{
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), key,
                               [](const Segment& s, const SegmentKey& k) { return s.key < k; });
    if (it == nodes_.end() || it->key != key) {
        return npos;
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::string SegmentGraph::to_dot() const
{
    std::ostringstream os;
    os << "digraph segments {\n  rankdir=LR;\n";
    os << "  source [shape=point];\n  sink [shape=doublecircle,label=\"\"];\n";
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        os << "  n" << v << " [label=\"" << to_string(nodes_[v].key) << " w=" << nodes_[v].weight << "\"];\n";
    }
    for (std::size_t v : source_) {
        os << "  source -> n" << v << ";\n";
    }
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        for (std::size_t u : succ_[v]) {
            os << "  n" << v << " -> n" << u << ";\n";
        }
        if (sink_[v]) {
            os << "  n" << v << " -> sink;\n";
        }
    }
    os << "}\n";
    return os.str();
}

SegmentGraph build_segment_graph(const GameInstance& inst)
{
    require_k1(inst);
    const std::size_t n = inst.size();
    const auto& s = inst.beliefs();

    SegmentGraph g;
    g.n_ = n;
    for (PlayerIndex a = 0; a + 1 < n; ++a) {
        for (PlayerIndex b = a; b + 1 < n; ++b) {
            for (PlayerIndex c = b + 1; c < n; ++c) {
                Segment seg = build_segment(inst, a, b, c);
                if (seg.discrepancy) {
                    ++g.discrepancies_;
                }
                if (seg.legit) {
                    g.nodes_.push_back(std::move(seg));
                }
            }
        }
    }

    const std::size_t m = g.nodes_.size();
    g.succ_.assign(m, {});
    g.sink_.assign(m, false);

    // Nodes are sorted by a; bucket them by start index for the edge scan.
    std::vector<std::vector<std::size_t>> starting_at(n + 1);
    for (std::size_t v = 0; v < m; ++v) {
        starting_at[g.nodes_[v].key.a].push_back(v);
    }

    for (std::size_t v = 0; v < m; ++v) {
        const Segment& left = g.nodes_[v];
        if (left.key.a == 0) {
            g.source_.push_back(v);
        }
        if (left.key.c + 1 == n) {
            g.sink_[v] = true;
            continue;
        }
        const PlayerIndex c = left.key.c;
        const PlayerIndex a2 = c + 1;
        for (std::size_t u : starting_at[a2]) {
            const Segment& right = g.nodes_[u];
            const bool c_keeps_left = abs(left.opinion(c - 1) - s[c]) <= abs(right.opinion(a2) - s[c]);
            const bool a2_keeps_right = abs(right.opinion(a2 + 1) - s[a2]) <= abs(left.opinion(c) - s[a2]);
            if (c_keeps_left && a2_keeps_right) {
                g.succ_[v].push_back(u);
            }
        }
    }
    return g;
}

OpinionVector assemble(const SegmentGraph& graph, const std::vector<std::size_t>& path)
{
    OpinionVector z;
    z.reserve(graph.num_players());
    for (std::size_t v : path) {
        const auto& op = graph.nodes()[v].opinions;
        z.insert(z.end(), op.begin(), op.end());
    }
    return z;
}

bool exists_pne(const GameInstance& inst)
{
    const SegmentGraph g = build_segment_graph(inst);
    std::vector<bool> reaches_sink(g.nodes().size(), false);
    // Edges strictly increase the start index, so reverse key order is a
    // reverse topological order.
    for (std::size_t v = g.nodes().size(); v-- > 0;) {
        bool r = g.to_sink(v);
        for (std::size_t u : g.successors(v)) {
            r = r || reaches_sink[u];
        }
        reaches_sink[v] = r;
    }
    return std::any_of(g.source_edges().begin(), g.source_edges().end(),
                       [&](std::size_t v) { return reaches_sink[v]; });
}

namespace {

template <class Visit>
void for_each_path(const SegmentGraph& g, Visit&& visit)
{
    // Iterative DFS in lexicographic order of segment sequences; `visit`
    // returns false to stop.
    struct Frame {
        std::size_t node;
        std::size_t next;
    };
    std::vector<std::size_t> path;
    std::vector<Frame> stack;
    for (std::size_t start : g.source_edges()) {
        stack.push_back({start, 0});
        path.push_back(start);
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next == 0 && g.to_sink(f.node)) {
                f.next = 1;
                if (!visit(path)) {
                    return;
                }
                continue;
            }
            const auto& out = g.successors(f.node);
            const std::size_t idx = g.to_sink(f.node) ? f.next - 1 : f.next;
            if (idx < out.size()) {
                ++f.next;
                stack.push_back({out[idx], 0});
                path.push_back(out[idx]);
            } else {
                stack.pop_back();
                path.pop_back();
            }
        }
    }
}

PneSolution to_solution(const GameInstance& inst, const SegmentGraph& g, const std::vector<std::size_t>& path)
{
    PneSolution sol;
    sol.opinions = assemble(g, path);
    sol.social_cost = social_cost(inst, sol.opinions);
    for (std::size_t v : path) {
        sol.path.push_back(g.nodes()[v].key);
    }
    return sol;
}

std::optional<PneSolution> extreme_pne(const GameInstance& inst, bool want_max)
{
    const SegmentGraph g = build_segment_graph(inst);
    const std::size_t m = g.nodes().size();

    auto better = [want_max](const Rational& x, const Rational& y) { return want_max ? y < x : x < y; };

    // value[v]: optimal weight of a v-to-sink path; next[v]: chosen successor.
    std::vector<std::optional<Rational>> value(m);
    std::vector<std::size_t> next(m, SegmentGraph::npos);
    for (std::size_t v = m; v-- > 0;) {
        const Segment& seg = g.nodes()[v];
        if (g.to_sink(v)) {
            value[v] = seg.weight;
            continue;
        }
        for (std::size_t u : g.successors(v)) { // ascending key order: first optimum is lexicographically smallest
            if (value[u] && (!value[v] || better(seg.weight + *value[u], *value[v]))) {
                value[v] = seg.weight + *value[u];
                next[v] = u;
            }
        }
    }

    std::size_t start = SegmentGraph::npos;
    for (std::size_t v : g.source_edges()) {
        if (value[v] && (start == SegmentGraph::npos || better(*value[v], *value[start]))) {
            start = v;
        }
    }
    if (start == SegmentGraph::npos) {
        return std::nullopt;
    }
    std::vector<std::size_t> path;
    for (std::size_t v = start; v != SegmentGraph::npos; v = next[v]) {
        path.push_back(v);
    }
    PneSolution sol = to_solution(inst, g, path);
    if (is_pure_nash(inst, sol.opinions).is_pne) {
        return sol;
    }

    // The optimal path failed the full check; scan every path instead.
    std::optional<PneSolution> best;
    std::size_t visited = 0;
    for_each_path(g, [&](const std::vector<std::size_t>& p) {
        if (++visited > fallback_path_cap) {
            fail(ErrorCode::LimitExceeded, "too many segment paths to scan");
        }
        PneSolution cand = to_solution(inst, g, p);
        if (is_pure_nash(inst, cand.opinions).is_pne
            && (!best || better(cand.social_cost, best->social_cost))) {
            best = std::move(cand);
        }
        return true;
    });
    return best;
}

} // namespace

std::optional<PneSolution> best_pne(const GameInstance& inst) { return extreme_pne(inst, false); }

std::optional<PneSolution> worst_pne(const GameInstance& inst) { return extreme_pne(inst, true); }

Enumeration enumerate_pne(const GameInstance& inst, std::size_t limit)
{
    if (limit < 1) {
        fail(ErrorCode::InvalidArgument, "enumeration limit must be at least 1");
    }
    const SegmentGraph g = build_segment_graph(inst);
    Enumeration out;
    std::set<OpinionVector> seen;
    for_each_path(g, [&](const std::vector<std::size_t>& p) {
        if (out.equilibria.size() == limit) {
            out.truncated = true;
            return false;
        }
        PneSolution sol = to_solution(inst, g, p);
        if (seen.contains(sol.opinions)) {
            ++out.duplicate_paths;
        } else if (is_pure_nash(inst, sol.opinions).is_pne) {
            seen.insert(sol.opinions);
            out.equilibria.push_back(std::move(sol));
        } else {
            ++out.rejected_paths;
        }
        return true;
    });
    return out;
}

std::vector<OpinionVector> brute_force_pne_oracle(const GameInstance& inst)
{
    require_k1(inst);
    const std::size_t n = inst.size();
    if (n > 16) {
        fail(ErrorCode::LimitExceeded, "brute-force oracle supports at most 16 players");
    }
    const auto& s = inst.beliefs();
    const std::size_t interior = n - 2;

    std::set<std::vector<std::string>> seen;
    std::vector<OpinionVector> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << interior); ++mask) {
        // points_right[p]: p's neighbour is p+1, otherwise p-1.
        std::vector<bool> points_right(n);
        points_right[0] = true;
        points_right[n - 1] = false;
        for (std::size_t p = 1; p + 1 < n; ++p) {
            points_right[p] = (mask >> (p - 1)) & 1U;
        }

        OpinionVector z(n);
        // Each maximal R..RL..L block has one mutually-pointing pair (b, b+1);
        // solving z_b = (s_b + z_{b+1})/2, z_{b+1} = (s_{b+1} + z_b)/2 gives
        // the thirds, then the chains hang off it.
        for (std::size_t b = 0; b + 1 < n; ++b) {
            if (!(points_right[b] && !points_right[b + 1])) {
                continue;
            }
            z[b] = (Rational(2) * s[b] + s[b + 1]) / Rational(3);
            z[b + 1] = (s[b] + Rational(2) * s[b + 1]) / Rational(3);
            for (std::size_t p = b; p > 0 && points_right[p - 1]; --p) {
                z[p - 1] = (s[p - 1] + z[p]) / Rational(2);
            }
            for (std::size_t p = b + 2; p < n && !points_right[p]; ++p) {
                z[p] = (s[p] + z[p - 1]) / Rational(2);
            }
        }
        if (!is_pure_nash(inst, z).is_pne) {
            continue;
        }
        std::vector<std::string> key;
        for (const auto& x : z) {
            key.push_back(x.str());
        }
        if (seen.insert(key).second) {
            out.push_back(std::move(z));
        }
    }
    return out;
}

} // namespace kcof
