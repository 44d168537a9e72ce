// qsdecheck — synthesize QSDE matrix models from SLH data, decide commutation
// preservation and physical realizability, and cross-check against the
// operator-level oracle. Reports are JSON on stdout; exit codes are
// 0 = pass, 1 = checked and failed, 2 = could not check.

#include "qsde/model.hpp"
#include "qsde/oprep.hpp"
#include "qsde/realizability.hpp"
#include "qsde/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using qsde::io::Kind;
using qsde::io::SystemFile;
using qsde::realizability::OutputShape;
using qsde::realizability::RealizabilityReport;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct FileResult {
    json report;
    int status = kExitError;
    std::string error;
};

json make_envelope(const std::string& path, const SystemFile& input) {
    json j;
    j["schema"] = 1;
    j["tool"] = {{"name", "qsdecheck"}, {"version", kVersion}};
    json in = {{"path", path},
               {"digest", qsde::io::file_digest(path)},
               {"kind", qsde::io::kind_name(input.kind())}};
    if (!input.name.empty()) in["name"] = input.name;
    j["input"] = std::move(in);
    return j;
}

void merge_report(json& envelope, const RealizabilityReport& report) {
    const json body = qsde::io::report_to_json(report);
    for (const auto& [key, value] : body.items()) envelope[key] = value;
}

// Bring an input of any kind to QSDE form, synthesizing SLH inputs.
qsde::io::Payload to_qsde_payload(const SystemFile& file) {
    switch (file.kind()) {
    case Kind::linear_slh:
        return qsde::model::synthesize_linear(std::get<qsde::model::LinearSLH>(file.payload));
    case Kind::bilinear_slh:
        return qsde::model::synthesize_bilinear(std::get<qsde::model::BilinearSLH>(file.payload));
    case Kind::cascade_slh:
        return qsde::model::synthesize_cascade(std::get<qsde::model::CascadeSLH>(file.payload));
    default:
        return file.payload;
    }
}

FileResult check_one(const std::string& path, double tol, OutputShape shape,
                     const std::optional<Kind>& forced_kind) {
    FileResult result;
    try {
        const SystemFile file = qsde::io::load_system(path);
        if (forced_kind && *forced_kind != file.kind())
            throw qsde::io::ParseError(path + ": file kind \"" +
                                       qsde::io::kind_name(file.kind()) +
                                       "\" does not match --kind \"" +
                                       qsde::io::kind_name(*forced_kind) + '"');

        const qsde::io::Payload payload = to_qsde_payload(file);
        RealizabilityReport report;
        std::string checked;
        if (const auto* q = std::get_if<qsde::model::LinearQSDE>(&payload)) {
            report = qsde::realizability::check_pr_linear(*q, tol);
            checked = "linear-qsde";
        } else if (const auto* q = std::get_if<qsde::model::BilinearQSDE>(&payload)) {
            report = qsde::realizability::check_pr_bilinear(*q, tol);
            checked = "bilinear-qsde";
        } else {
            report = qsde::realizability::check_pr_cascade(
                std::get<qsde::model::CascadeQSDE>(payload), tol, shape);
            checked = "cascade-qsde";
        }

        result.report = make_envelope(path, file);
        result.report["checked-kind"] = checked;
        merge_report(result.report, report);
        result.status = report.pass() ? kExitPass : kExitFail;
    } catch (const std::exception& e) {
        result.error = e.what();
        result.status = kExitError;
    }
    return result;
}

int emit_results(std::vector<FileResult>&& results) {
    int status = kExitPass;
    json reports = json::array();
    for (auto& r : results) {
        if (!r.error.empty())
            std::cerr << "error: " << r.error << '\n';
        else
            reports.push_back(std::move(r.report));
        status = std::max(status, r.status);
    }
    if (reports.size() == 1)
        std::cout << reports.front().dump(2) << '\n';
    else if (!reports.empty())
        std::cout << reports.dump(2) << '\n';
    return status;
}

int run_check(const std::vector<std::string>& paths, double tol, const std::string& shape_name,
              const std::string& kind_name) {
    const OutputShape shape = qsde::realizability::output_shape_from_name(shape_name);
    std::optional<Kind> forced;
    if (!kind_name.empty()) forced = qsde::io::kind_from_name(kind_name);

    std::vector<std::future<FileResult>> futures;
    futures.reserve(paths.size());
    for (const auto& path : paths)
        futures.push_back(std::async(std::launch::async, check_one, path, tol, shape, forced));
    std::vector<FileResult> results;
    results.reserve(paths.size());
    for (auto& f : futures) results.push_back(f.get());
    return emit_results(std::move(results));
}

int run_synthesize(const std::string& path, const std::string& out_path) {
    const SystemFile file = qsde::io::load_system(path);
    if (!file.is_slh())
        throw qsde::io::ParseError(path + ": synthesize expects an SLH-kind input");

    SystemFile out;
    out.name = file.name;
    out.description = file.description;
    out.payload = to_qsde_payload(file);

    // every synthesized bundle must verify before it is emitted
    constexpr double kSelfCheckTol = 1e-10;
    bool ok = false;
    if (const auto* q = std::get_if<qsde::model::LinearQSDE>(&out.payload))
        ok = qsde::realizability::check_pr_linear(*q, kSelfCheckTol).pass();
    else if (const auto* q = std::get_if<qsde::model::BilinearQSDE>(&out.payload))
        ok = qsde::realizability::check_pr_bilinear(*q, kSelfCheckTol).pass();
    else
        ok = qsde::realizability::check_pr_cascade(std::get<qsde::model::CascadeQSDE>(out.payload),
                                                   kSelfCheckTol)
                 .pass();
    if (!ok) throw std::runtime_error(path + ": synthesized bundle failed its self-check");

    if (out_path.empty())
        std::cout << qsde::io::system_to_json(out).dump(2) << '\n';
    else
        qsde::io::save_system(out, out_path);
    return kExitPass;
}

int run_oracle(const std::string& path, int fock_dim, double tol, const std::string& qsde_path) {
    if (fock_dim < 4)
        throw std::invalid_argument("--fock-dim must be at least 4");

    const SystemFile file = qsde::io::load_system(path);
    if (!file.is_slh()) throw qsde::io::ParseError(path + ": oracle expects an SLH-kind input");

    // everything runs through the mixed representation
    qsde::model::CascadeSLH slh;
    if (const auto* s = std::get_if<qsde::model::LinearSLH>(&file.payload))
        slh = qsde::model::embed(*s);
    else if (const auto* s = std::get_if<qsde::model::BilinearSLH>(&file.payload))
        slh = qsde::model::embed(*s);
    else
        slh = std::get<qsde::model::CascadeSLH>(file.payload);

    qsde::model::CascadeQSDE q;
    if (qsde_path.empty()) {
        q = qsde::model::synthesize_cascade(slh);
    } else {
        const SystemFile qf = qsde::io::load_system(qsde_path);
        if (const auto* lq = std::get_if<qsde::model::LinearQSDE>(&qf.payload))
            q = qsde::model::embed(*lq);
        else if (const auto* bq = std::get_if<qsde::model::BilinearQSDE>(&qf.payload))
            q = qsde::model::embed(*bq);
        else if (const auto* cq = std::get_if<qsde::model::CascadeQSDE>(&qf.payload))
            q = *cq;
        else
            throw qsde::io::ParseError(qsde_path + ": --qsde expects a QSDE-kind input");
    }

    RealizabilityReport report;
    report.tolerance = tol;
    report.append(qsde::oprep::verify_lemma2(slh, fock_dim, tol));
    report.append(qsde::oprep::verify_preservation_integrands(q, fock_dim, tol));
    report.append(qsde::oprep::oracle_drift_match(q, slh, fock_dim, tol));

    json envelope = make_envelope(path, file);
    envelope["fock-dim"] = fock_dim;
    merge_report(envelope, report);
    std::cout << envelope.dump(2) << '\n';
    return report.pass() ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QSDE model synthesis, commutation-preservation and physical-realizability checks"};
    app.require_subcommand(1);

    std::vector<std::string> check_paths;
    double check_tol = 1e-9;
    std::string check_shape = "series-product";
    std::string check_kind;
    auto* check = app.add_subcommand("check", "Check system files against the realizability conditions");
    check->add_option("files", check_paths, "System files (JSON)")->required()->expected(-1);
    check->add_option("--tol", check_tol, "Residual tolerance (default 1e-9)");
    check->add_option("--kind", check_kind, "Require the input kind to match");
    check->add_option("--c-shape", check_shape,
                      "Cascade output convention: series-product | paper")
        ->check(CLI::IsMember({"series-product", "paper"}));

    std::string synth_path, synth_out;
    auto* synth = app.add_subcommand("synthesize", "Synthesize the QSDE bundle for an SLH file");
    synth->add_option("file", synth_path, "SLH system file (JSON)")->required();
    synth->add_option("-o,--output", synth_out, "Output path (stdout when omitted)");

    std::string oracle_path, oracle_qsde;
    int oracle_fock = 16;
    double oracle_tol = 1e-9;
    auto* oracle = app.add_subcommand(
        "oracle", "Verify a system against the finite-dimensional operator representation");
    oracle->add_option("file", oracle_path, "SLH system file (JSON)")->required();
    oracle->add_option("--fock-dim", oracle_fock, "Retained Fock levels (default 16, minimum 4)");
    oracle->add_option("--tol", oracle_tol, "Residual tolerance (default 1e-9)");
    oracle->add_option("--qsde", oracle_qsde, "Explicit QSDE file to verify (default: synthesize)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (check->parsed()) return run_check(check_paths, check_tol, check_shape, check_kind);
        if (synth->parsed()) return run_synthesize(synth_path, synth_out);
        return run_oracle(oracle_path, oracle_fock, oracle_tol, oracle_qsde);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
