#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "bpvd/graph.hpp"

namespace bpvd {

/// Parse error carrying the 1-based line number of the offending line.
class EdgeListParseError : public std::runtime_error {
public:
    EdgeListParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Edge-list text format: first non-comment line is `n m`, followed by m lines
/// `u v` with 0-based ids < n.  Lines starting with `#` are comments.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_file(const std::string& path);

/// Serializes with vertices renumbered 0..n-1 in id order (identity for
/// graphs that already use contiguous ids); edges sorted lexicographically.
/// A comment records the original ids whenever the renumbering is not the
/// identity.
std::string serialize_edge_list(const Graph& g);

} // namespace bpvd
