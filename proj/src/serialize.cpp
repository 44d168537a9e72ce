#include "qsde/serialize.hpp"

#include "qsde/model.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace qsde::io {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

const std::array<const char*, 6> kKindNames = {"linear-slh",  "bilinear-slh",  "cascade-slh",
                                               "linear-qsde", "bilinear-qsde", "cascade-qsde"};

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const json& field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field \"") + key + '"');
    return *it;
}

double number(const json& j, const char* what) {
    if (!j.is_number()) fail(std::string(what) + ": expected a number");
    return j.get<double>();
}

} // namespace

std::string kind_name(Kind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

Kind kind_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i)
        if (name == kKindNames[i]) return static_cast<Kind>(i);
    fail("unknown kind \"" + name + '"');
}

// --------------------------- scalar/matrix coding ----------------------------

json to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const Eigen::RowVectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(json::array({v(i).real(), v(i).imag()}));
    return out;
}

Eigen::MatrixXd real_matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) fail(std::string(what) + ": expected a non-empty matrix");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) fail(std::string(what) + ": expected nested arrays of numbers");
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            fail(std::string(what) + ": ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(j[r][c], what);
    }
    return m;
}

Eigen::VectorXd real_vector_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) fail(std::string(what) + ": expected a non-empty vector");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(i) = number(j[i], what);
    return v;
}

Eigen::RowVectorXcd complex_row_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) fail(std::string(what) + ": expected a non-empty row");
    Eigen::RowVectorXcd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& e = j[i];
        if (!e.is_array() || e.size() != 2)
            fail(std::string(what) + ": complex scalars are [re, im] pairs");
        v(i) = {number(e[0], what), number(e[1], what)};
    }
    return v;
}

// --------------------------- payload coding ----------------------------------

namespace {

json linear_slh_to_json(const model::LinearSLH& slh) {
    return {{"n", slh.n()}, {"R", to_json(slh.R)}, {"Gamma1", to_json(slh.Gamma1)}};
}

json bilinear_slh_to_json(const model::BilinearSLH& slh) {
    json alpha = json::array();
    for (int i = 0; i < 3; ++i) alpha.push_back(slh.alpha2(i));
    return {{"alpha2", alpha}, {"Gamma2", to_json(Eigen::RowVectorXcd(slh.Gamma2))}};
}

model::LinearSLH linear_slh_from_json(const json& p) {
    model::LinearSLH slh;
    slh.R = real_matrix_from_json(field(p, "R"), "R");
    slh.Gamma1 = complex_row_from_json(field(p, "Gamma1"), "Gamma1");
    const int n = static_cast<int>(number(field(p, "n"), "n"));
    if (slh.n() != n) fail("Gamma1 length inconsistent with n");
    return slh;
}

model::BilinearSLH bilinear_slh_from_json(const json& p) {
    model::BilinearSLH slh;
    const Eigen::VectorXd alpha = real_vector_from_json(field(p, "alpha2"), "alpha2");
    if (alpha.size() != 3) fail("alpha2 must have 3 entries");
    slh.alpha2 = alpha.transpose();
    const Eigen::RowVectorXcd gamma = complex_row_from_json(field(p, "Gamma2"), "Gamma2");
    if (gamma.size() != 3) fail("Gamma2 must have 3 entries");
    slh.Gamma2 = gamma;
    return slh;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

} // namespace

json system_to_json(const SystemFile& file) {
    json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = kind_name(file.kind());
    if (!file.name.empty()) j["name"] = file.name;
    if (!file.description.empty()) j["description"] = file.description;

    json p;
    std::visit(
        [&](const auto& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, model::LinearSLH>) {
                p = linear_slh_to_json(payload);
            } else if constexpr (std::is_same_v<T, model::BilinearSLH>) {
                p = bilinear_slh_to_json(payload);
            } else if constexpr (std::is_same_v<T, model::CascadeSLH>) {
                p = {{"linear", linear_slh_to_json(payload.linear)},
                     {"bilinear", bilinear_slh_to_json(payload.bilinear)}};
            } else if constexpr (std::is_same_v<T, model::LinearQSDE>) {
                p = {{"n", payload.n()},
                     {"A", to_json(payload.A)},
                     {"B", to_json(payload.B)},
                     {"C", to_json(payload.C)}};
            } else if constexpr (std::is_same_v<T, model::BilinearQSDE>) {
                p = {{"A0", vector_to_json(payload.A0)},
                     {"A", to_json(Eigen::MatrixXd(payload.A))},
                     {"B1", to_json(Eigen::MatrixXd(payload.B1))},
                     {"B2", to_json(Eigen::MatrixXd(payload.B2))},
                     {"C", to_json(Eigen::MatrixXd(payload.C))}};
            } else {
                p = {{"n", payload.n},
                     {"A0", vector_to_json(payload.A0)},
                     {"A", to_json(payload.A)},
                     {"B1", to_json(payload.B1)},
                     {"B2", to_json(payload.B2)},
                     {"B", to_json(payload.B)},
                     {"C", to_json(payload.C)}};
            }
        },
        file.payload);
    j["payload"] = std::move(p);
    return j;
}

SystemFile system_from_json(const json& j) {
    if (!j.is_object()) fail("top level must be a JSON object");
    const int schema = static_cast<int>(number(field(j, "schema"), "schema"));
    if (schema != kSchemaVersion)
        fail("unsupported schema version " + std::to_string(schema));
    const Kind kind = kind_from_name(field(j, "kind").get<std::string>());
    const json& p = field(j, "payload");

    SystemFile file;
    if (j.contains("name")) file.name = j["name"].get<std::string>();
    if (j.contains("description")) file.description = j["description"].get<std::string>();

    try {
        switch (kind) {
        case Kind::linear_slh:
            file.payload = linear_slh_from_json(p);
            break;
        case Kind::bilinear_slh:
            file.payload = bilinear_slh_from_json(p);
            break;
        case Kind::cascade_slh:
            file.payload = model::CascadeSLH{linear_slh_from_json(field(p, "linear")),
                                             bilinear_slh_from_json(field(p, "bilinear"))};
            break;
        case Kind::linear_qsde: {
            model::LinearQSDE q;
            q.A = real_matrix_from_json(field(p, "A"), "A");
            q.B = real_matrix_from_json(field(p, "B"), "B");
            q.C = real_matrix_from_json(field(p, "C"), "C");
            if (q.n() != static_cast<int>(number(field(p, "n"), "n")))
                fail("A dimension inconsistent with n");
            file.payload = std::move(q);
            break;
        }
        case Kind::bilinear_qsde: {
            model::BilinearQSDE q;
            const Eigen::VectorXd a0 = real_vector_from_json(field(p, "A0"), "A0");
            if (a0.size() != 3) fail("A0 must have 3 entries");
            q.A0 = a0;
            const Eigen::MatrixXd a = real_matrix_from_json(field(p, "A"), "A");
            const Eigen::MatrixXd b1 = real_matrix_from_json(field(p, "B1"), "B1");
            const Eigen::MatrixXd b2 = real_matrix_from_json(field(p, "B2"), "B2");
            const Eigen::MatrixXd c = real_matrix_from_json(field(p, "C"), "C");
            if (a.rows() != 3 || a.cols() != 3 || b1.rows() != 3 || b1.cols() != 3 ||
                b2.rows() != 3 || b2.cols() != 3)
                fail("A, B1, B2 must be 3 x 3");
            if (c.rows() != 2 || c.cols() != 3) fail("C must be 2 x 3");
            q.A = a;
            q.B1 = b1;
            q.B2 = b2;
            q.C = c;
            file.payload = std::move(q);
            break;
        }
        case Kind::cascade_qsde: {
            model::CascadeQSDE q;
            q.n = static_cast<int>(number(field(p, "n"), "n"));
            q.A0 = real_vector_from_json(field(p, "A0"), "A0");
            q.A = real_matrix_from_json(field(p, "A"), "A");
            q.B1 = real_matrix_from_json(field(p, "B1"), "B1");
            q.B2 = real_matrix_from_json(field(p, "B2"), "B2");
            q.B = real_matrix_from_json(field(p, "B"), "B");
            q.C = real_matrix_from_json(field(p, "C"), "C");
            file.payload = std::move(q);
            break;
        }
        }
        std::visit([](const auto& payload) { model::validate(payload); }, file.payload);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return file;
}

SystemFile load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail(path + ": " + e.what());
    }
    try {
        return system_from_json(j);
    } catch (const ParseError& e) {
        fail(path + ": " + e.what());
    }
}

void save_system(const SystemFile& file, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("cannot write " + path);
    out << system_to_json(file).dump(2) << '\n';
}

// --------------------------- reports ------------------------------------------

json report_to_json(const realizability::RealizabilityReport& report) {
    json j;
    j["tolerance"] = report.tolerance;
    json conditions = json::array();
    for (const auto& c : report.conditions) {
        conditions.push_back({{"id", c.id},
                              {"label", c.label},
                              {"residual", c.residual},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
    }
    j["conditions"] = std::move(conditions);
    if (!report.output_shape.empty()) j["c_shape"] = report.output_shape;

    if (report.recovered_linear || report.recovered_bilinear) {
        json rec;
        rec["certified"] = report.certified;
        if (report.recovered_linear) rec["linear-slh"] = linear_slh_to_json(*report.recovered_linear);
        if (report.recovered_bilinear)
            rec["bilinear-slh"] = bilinear_slh_to_json(*report.recovered_bilinear);
        j["recovered"] = std::move(rec);
    }
    j["verdict"] = report.pass() ? "pass" : "fail";
    return j;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path);
    std::uint64_t hash = 1469598103934665603ull;
    char ch;
    while (in.get(ch)) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 1099511628211ull;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << hash;
    return out.str();
}

} // namespace qsde::io
