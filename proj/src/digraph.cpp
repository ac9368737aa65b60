#include "steinerforge/digraph.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <sstream>

namespace steinerforge {

Digraph::Digraph(int order, std::vector<Arc> arcs,
                 std::map<int, std::string> labels)
    : order_(order), arcs_(std::move(arcs)), labels_(std::move(labels)) {
    if (order_ < 0) throw std::invalid_argument("negative vertex count");
    std::sort(arcs_.begin(), arcs_.end());
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        auto [u, v] = arcs_[i];
        if (u < 0 || u >= order_ || v < 0 || v >= order_)
            throw std::invalid_argument("arc endpoint out of range");
        if (u == v) throw std::invalid_argument("loop arc");
        if (i > 0 && arcs_[i] == arcs_[i - 1])
            throw std::invalid_argument("duplicate arc");
    }
    for (auto& [v, tag] : labels_) {
        if (v < 0 || v >= order_)
            throw std::invalid_argument("label vertex out of range");
        (void)tag;
    }
    out_.assign(order_, {});
    in_.assign(order_, {});
    for (auto [u, v] : arcs_) {
        out_[u].push_back(v);
        in_[v].push_back(u);
    }
}

bool Digraph::has_arc(int u, int v) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), Arc{u, v});
}

const std::string* Digraph::label(int v) const {
    auto it = labels_.find(v);
    return it == labels_.end() ? nullptr : &it->second;
}

std::optional<int> Digraph::vertex_by_label(std::string_view tag) const {
    for (const auto& [v, t] : labels_)
        if (t == tag) return v;
    return std::nullopt;
}

bool Digraph::operator==(const Digraph& other) const {
    return order_ == other.order_ && arcs_ == other.arcs_ &&
           labels_ == other.labels_;
}

UGraph::UGraph(int order, std::vector<Arc> edges)
    : order_(order), edges_(std::move(edges)) {
    if (order_ < 0) throw std::invalid_argument("negative vertex count");
    for (auto& [u, v] : edges_) {
        if (u > v) std::swap(u, v);
        if (u == v) throw std::invalid_argument("self edge");
        if (u < 0 || v >= order_)
            throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    adj_.assign(order_, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool UGraph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Arc{u, v});
}

bool UGraph::connected() const {
    if (order_ <= 1) return true;
    std::vector<bool> seen(order_, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj_[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                q.push(w);
            }
    }
    return reached == order_;
}

bool UGraph::operator==(const UGraph& other) const {
    return order_ == other.order_ && edges_ == other.edges_;
}

namespace {

int parse_int(std::string_view tok, int line, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("bad ") + what + " '" +
                                   std::string(tok) + "'");
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                          s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s, std::size_t max_parts) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i >= s.size()) break;
        if (parts.size() + 1 == max_parts) {
            parts.push_back(trim(s.substr(i)));
            return parts;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        parts.push_back(s.substr(i, j - i));
        i = j;
    }
    return parts;
}

}  // namespace

Digraph parse_digraph(std::string_view text) {
    std::optional<int> order;
    std::vector<Arc> arcs;
    std::map<int, std::string> labels;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        auto parts = split_ws(line, 3);
        if (parts[0] == "n") {
            if (order) throw ParseError(line_no, "repeated 'n' directive");
            if (parts.size() != 2)
                throw ParseError(line_no, "expected 'n <count>'");
            int n = parse_int(parts[1], line_no, "vertex count");
            if (n < 0) throw ParseError(line_no, "negative vertex count");
            order = n;
        } else if (parts[0] == "a") {
            if (!order) throw ParseError(line_no, "'a' before 'n'");
            if (parts.size() != 3)
                throw ParseError(line_no, "expected 'a <u> <v>'");
            int u = parse_int(parts[1], line_no, "vertex");
            int v = parse_int(parts[2], line_no, "vertex");
            if (u < 0 || u >= *order || v < 0 || v >= *order)
                throw ParseError(line_no, "arc endpoint out of range");
            if (u == v) throw ParseError(line_no, "loop arc");
            if (std::find(arcs.begin(), arcs.end(), Arc{u, v}) != arcs.end())
                throw ParseError(line_no, "duplicate arc");
            arcs.emplace_back(u, v);
        } else if (parts[0] == "l") {
            if (!order) throw ParseError(line_no, "'l' before 'n'");
            if (parts.size() != 3)
                throw ParseError(line_no, "expected 'l <v> <tag>'");
            int v = parse_int(parts[1], line_no, "vertex");
            if (v < 0 || v >= *order)
                throw ParseError(line_no, "label vertex out of range");
            labels[v] = std::string(parts[2]);
        } else {
            throw ParseError(line_no, "unknown directive '" +
                                          std::string(parts[0]) + "'");
        }
    }
    if (!order) throw ParseError(line_no, "missing 'n' directive");
    return Digraph(*order, std::move(arcs), std::move(labels));
}

std::string serialize_digraph(const Digraph& d) {
    std::ostringstream out;
    out << "n " << d.order();
    for (auto [u, v] : d.arcs()) out << "\na " << u << " " << v;
    for (const auto& [v, tag] : d.labels()) out << "\nl " << v << " " << tag;
    return out.str();
}

namespace {

// Vertices reachable from `start` along out-arcs.
int count_reachable(const Digraph& d, int start, bool backwards) {
    std::vector<bool> seen(d.order(), false);
    std::queue<int> q;
    q.push(start);
    seen[start] = true;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : backwards ? d.in(v) : d.out(v))
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                q.push(w);
            }
    }
    return reached;
}

bool has_directed_cycle(const Digraph& d) {
    // Kahn peeling; leftovers mean a cycle.
    std::vector<int> indeg(d.order());
    for (int v = 0; v < d.order(); ++v) indeg[v] = d.in_degree(v);
    std::queue<int> q;
    for (int v = 0; v < d.order(); ++v)
        if (indeg[v] == 0) q.push(v);
    int removed = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ++removed;
        for (int w : d.out(v))
            if (--indeg[w] == 0) q.push(w);
    }
    return removed != d.order();
}

}  // namespace

ClassReport classify(const Digraph& d) {
    ClassReport r;
    const int n = d.order();
    r.connected = underlying_graph(d).connected();
    r.strong = n <= 1 || (count_reachable(d, 0, false) == n &&
                          count_reachable(d, 0, true) == n);
    r.acyclic = !has_directed_cycle(d);
    r.semicomplete = true;
    r.tournament = true;
    for (int u = 0; u < n && (r.semicomplete || r.tournament); ++u)
        for (int v = u + 1; v < n; ++v) {
            bool uv = d.has_arc(u, v), vu = d.has_arc(v, u);
            if (!uv && !vu) {
                r.semicomplete = false;
                r.tournament = false;
                break;
            }
            if (uv && vu) r.tournament = false;
        }
    r.symmetric = true;
    for (auto [u, v] : d.arcs())
        if (!d.has_arc(v, u)) {
            r.symmetric = false;
            break;
        }
    bool balanced = true;
    for (int v = 0; v < n; ++v)
        if (d.in_degree(v) != d.out_degree(v)) {
            balanced = false;
            break;
        }
    r.eulerian = r.connected && balanced;
    return r;
}

std::string format_class_report(const ClassReport& r) {
    std::ostringstream out;
    auto flag = [&](const char* name, bool v, bool last = false) {
        out << name << "=" << (v ? "true" : "false") << (last ? "" : "\n");
    };
    flag("connected", r.connected);
    flag("strong", r.strong);
    flag("acyclic", r.acyclic);
    flag("semicomplete", r.semicomplete);
    flag("tournament", r.tournament);
    flag("symmetric", r.symmetric);
    flag("eulerian", r.eulerian, true);
    return out.str();
}

UGraph underlying_graph(const Digraph& d) {
    std::vector<Arc> edges;
    edges.reserve(d.arcs().size());
    for (auto [u, v] : d.arcs())
        edges.emplace_back(std::min(u, v), std::max(u, v));
    return UGraph(d.order(), std::move(edges));
}

InducedResult induced_mapped(const Digraph& d, std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> index_of(d.order(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        int v = verts[i];
        if (v < 0 || v >= d.order())
            throw std::invalid_argument("induced: vertex out of range");
        index_of[v] = static_cast<int>(i);
    }
    std::vector<Arc> arcs;
    for (auto [u, v] : d.arcs())
        if (index_of[u] >= 0 && index_of[v] >= 0)
            arcs.emplace_back(index_of[u], index_of[v]);
    std::map<int, std::string> labels;
    for (const auto& [v, tag] : d.labels())
        if (index_of[v] >= 0) labels[index_of[v]] = tag;
    return {Digraph(static_cast<int>(verts.size()), std::move(arcs),
                    std::move(labels)),
            std::move(verts)};
}

Digraph induced(const Digraph& d, std::vector<int> verts) {
    return induced_mapped(d, std::move(verts)).graph;
}

Digraph reverse_digraph(const Digraph& d) {
    std::vector<Arc> arcs;
    arcs.reserve(d.arcs().size());
    for (auto [u, v] : d.arcs()) arcs.emplace_back(v, u);
    return Digraph(d.order(), std::move(arcs), d.labels());
}

Digraph symmetric_closure(const Digraph& d) {
    std::vector<Arc> arcs = d.arcs();
    for (auto [u, v] : d.arcs())
        if (!d.has_arc(v, u)) arcs.emplace_back(v, u);
    return Digraph(d.order(), std::move(arcs), d.labels());
}

}  // namespace steinerforge
