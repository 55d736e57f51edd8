#pragma once

#include <iosfwd>
#include <string>

#include "admtuple/types.hpp"

namespace admtuple {

// Tuple file format: plain text, one decimal integer per line, strictly
// increasing. Lines starting with '#' are comments; blank lines are skipped.
// Writers emit a header comment "# k=<size> diameter=<d>".

/// Throws std::runtime_error on unreadable files, malformed lines or
/// non-increasing values.
Tuple read_tuple(std::istream& in);
Tuple read_tuple_file(const std::string& path);

void write_tuple(std::ostream& out, const Tuple& tuple);
void write_tuple_file(const std::string& path, const Tuple& tuple);

/// Shifts the tuple so that its first element is 0.
Tuple normalized(const Tuple& tuple);

}  // namespace admtuple
