// serialize.hpp — JSON interchange for system descriptions and check reports
//
// Schema (version 1): complex scalars are [re, im] pairs, matrices are
// row-major nested arrays. The "kind" field selects the payload layout.

#pragma once

#include "qsde/report.hpp"
#include "qsde/types.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>

namespace qsde::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Kind {
    linear_slh,
    bilinear_slh,
    cascade_slh,
    linear_qsde,
    bilinear_qsde,
    cascade_qsde,
};

std::string kind_name(Kind kind);
Kind kind_from_name(const std::string& name);

using Payload = std::variant<model::LinearSLH, model::BilinearSLH, model::CascadeSLH,
                             model::LinearQSDE, model::BilinearQSDE, model::CascadeQSDE>;

struct SystemFile {
    Payload payload;
    std::string name;
    std::string description;

    Kind kind() const { return static_cast<Kind>(payload.index()); }
    bool is_slh() const { return payload.index() <= 2; }
};

SystemFile system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const SystemFile& file);

SystemFile load_system(const std::string& path);
void save_system(const SystemFile& file, const std::string& path);

// Report body: tolerance, per-condition records, recovered parameters, verdict
nlohmann::json report_to_json(const realizability::RealizabilityReport& report);

// FNV-1a 64-bit digest over the raw file bytes, as "fnv1a64:<hex>"
std::string file_digest(const std::string& path);

// Scalar/matrix encoding helpers shared with tests
nlohmann::json to_json(const Eigen::MatrixXd& m);
nlohmann::json to_json(const Eigen::RowVectorXcd& v);
Eigen::MatrixXd real_matrix_from_json(const nlohmann::json& j, const char* what);
Eigen::VectorXd real_vector_from_json(const nlohmann::json& j, const char* what);
Eigen::RowVectorXcd complex_row_from_json(const nlohmann::json& j, const char* what);

} // namespace qsde::io
