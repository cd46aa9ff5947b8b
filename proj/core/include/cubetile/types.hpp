#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubetile {

using VertexId = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;

/// A path in the 1-skeleton: consecutive vertices adjacent, no repeats.
struct PathSeq {
  std::vector<VertexId> vertices;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  bool contains(VertexId v) const;

  friend bool operator==(const PathSeq&, const PathSeq&) = default;
  friend auto operator<=>(const PathSeq&, const PathSeq&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A tetrahedron or boundary triangle cites a vertex that does not exist.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

/// Unknown boundary label string.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Path with non-adjacent consecutive vertices, repeats, or bad ids.
class InvalidPathError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the operation's domain (empty set, negative t, zero volume, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs that belong together do not match (metric size vs mesh, ...).
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Enumeration exceeded its configured cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// Build a VertexSet from arbitrary ids (sorts and dedups).
VertexSet make_vertex_set(std::vector<VertexId> ids);

}  // namespace cubetile
