#pragma once

#include <string>
#include <variant>

#include "syang/roots.hpp"
#include "syang/superfree.hpp"

namespace syang {

using Parsed = std::variant<Element, TensorElement>;

// Offsets in ParseError are 1-based columns; end of input reports length + 1.
Parsed parse_expression(const std::string& text, const RootDatum& rd);
Element parse_element(const std::string& text, const RootDatum& rd);
TensorElement parse_tensor(const std::string& text, const RootDatum& rd);

}  // namespace syang
