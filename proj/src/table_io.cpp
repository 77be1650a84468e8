#include "steklov/table_io.hpp"

#include <charconv>

#include "json.hpp"

namespace steklov::io {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_branch_csv(std::ostream& os, const branch::BranchTable& table) {
    os << "epsilon,lambda,residual\n";
    for (const auto& p : table.points)
        os << format_double(p.epsilon) << ',' << format_double(p.lambda) << ','
           << format_double(p.residual) << '\n';
}

std::string branch_sidecar_json(const branch::BranchTable& table) {
    nlohmann::ordered_json j;
    j["N"] = table.cfg.dimension();
    j["M"] = table.cfg.mass().value();
    j["l"] = table.cfg.angular_index();
    j["anchor_lambda"] = table.anchor_lambda;
    j["slope_at_zero"] = table.slope_at_zero;
    j["truncated"] = table.truncated;
    return j.dump(2);
}

void write_family_csv(std::ostream& os, const std::vector<branch::FamilyPoint>& rows) {
    os << "l,branch,epsilon,lambda,residual\n";
    for (const auto& r : rows)
        os << r.l << ',' << r.branch << ',' << format_double(r.epsilon) << ','
           << format_double(r.lambda) << ',' << format_double(r.residual) << '\n';
}

}  // namespace steklov::io
