#pragma once

#include <string>
#include <string_view>

#include "tangles/logic.hpp"

namespace tangles {

/// Parses the line-based model format:
///
///   points N                 exactly once, N >= 1
///   edge I J                 any number; the loader closes the relation
///                            reflexively and transitively
///   val NAME I1 ... Ik       k >= 0; NAME an identifier, each name once
///
/// '#' starts a comment, blank lines are skipped, and the sections may come
/// in any order.  Problems raise parse_error carrying the 1-based line
/// number in `position`.
Model parse_model_text(std::string_view text);

/// Reads a file and hands it to parse_model_text.  A missing or unreadable
/// file is an input_error.
Model load_model(const std::string& path);

/// Renders a model in the same format, deterministically: the full edge
/// list row by row, then valuations in name order.  Feeding the result
/// back through parse_model_text reproduces the model exactly.
std::string model_to_text(const Model& m);

} // namespace tangles
