#include "bpvd/edge_io.hpp"

#include <fstream>
#include <sstream>

namespace bpvd {

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

Graph parse_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    while (std::getline(in, line)) {
        lineno++;
        if (is_blank_or_comment(line)) continue;
        std::istringstream hs(line);
        if (!(hs >> n >> m) || n < 0 || m < 0)
            throw EdgeListParseError(lineno, "expected header `n m`");
        break;
    }
    if (n < 0) throw EdgeListParseError(lineno, "missing header `n m`");

    VertexSet vs;
    for (long long v = 0; v < n; v++) vs.insert((VertexId)v);
    std::vector<std::pair<VertexId, VertexId>> edges;
    long long read = 0;
    while (read < m && std::getline(in, line)) {
        lineno++;
        if (is_blank_or_comment(line)) continue;
        std::istringstream es(line);
        long long u, v;
        if (!(es >> u >> v)) throw EdgeListParseError(lineno, "expected edge `u v`");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw EdgeListParseError(lineno, "vertex id out of range [0, n)");
        if (u == v) throw EdgeListParseError(lineno, "loop edges are not allowed");
        edges.emplace_back((VertexId)u, (VertexId)v);
        read++;
    }
    if (read < m) throw EdgeListParseError(lineno, "fewer edges than the header announced");
    return Graph(std::move(vs), edges);
}

Graph parse_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_edge_list(in);
}

std::string serialize_edge_list(const Graph& g) {
    std::map<VertexId, VertexId> renumber;
    VertexId next = 0;
    bool identity = true;
    for (VertexId v : g.vertices()) {
        renumber[v] = next;
        if (v != next) identity = false;
        next++;
    }
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    if (!identity) {
        out << "# original ids:";
        for (VertexId v : g.vertices()) out << ' ' << v;
        out << '\n';
    }
    for (auto [u, v] : g.edges()) out << renumber[u] << ' ' << renumber[v] << '\n';
    return out.str();
}

} // namespace bpvd
