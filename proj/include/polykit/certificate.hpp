#pragma once

// Split certificates: the data of a splitting laid out level by level as a
// JSON document with a fixed key order, so runs can be compared byte for byte.

#include <string>

#include "polykit/lifting.hpp"
#include "polykit/splitting.hpp"

namespace polykit {

std::string split_certificate(const SplitResult& res);
std::string iso_certificate(const RetractIso& iso);

}  // namespace polykit
