#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "steklov/continuation.hpp"

namespace steklov::io {

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// Header `epsilon,lambda,residual`, one row per point.
void write_branch_csv(std::ostream& os, const branch::BranchTable& table);

/// {"N","M","l","anchor_lambda","slope_at_zero","truncated"}
std::string branch_sidecar_json(const branch::BranchTable& table);

/// Header `l,branch,epsilon,lambda,residual`.
void write_family_csv(std::ostream& os, const std::vector<branch::FamilyPoint>& rows);

}  // namespace steklov::io
