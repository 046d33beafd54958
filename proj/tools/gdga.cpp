#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gdga/io.hpp"
#include "gdga/project.hpp"

using namespace gdga;

namespace {

struct Options {
    std::string project;
    std::string backend, mc, cutoff, convention, lambda0, certificate_in;
    std::string emit_certificate, out, report_json;
    int kmax = -1, r_max = -1;
    bool json_stdout = false;
};

ProjectOverrides overrides(const Options& o) {
    ProjectOverrides ov;
    if (!o.backend.empty()) ov.backend_file = o.backend;
    if (!o.mc.empty()) ov.mc_file = o.mc;
    if (!o.cutoff.empty()) ov.cutoff = parse_rational(o.cutoff);
    if (!o.convention.empty()) ov.convention = parse_convention(o.convention);
    if (o.kmax >= 0) ov.kmax = o.kmax;
    if (!o.lambda0.empty()) ov.lambda0 = parse_rational(o.lambda0);
    if (o.r_max >= 0) ov.r_max = o.r_max;
    return ov;
}

int emit(const Options& o, const std::string& verb, const CommandResult& r) {
    json j = r.to_json();
    j["command"] = verb;
    if (o.json_stdout) std::cout << canonical_dump(j) << "\n";
    else std::cout << r.to_text();
    if (!o.report_json.empty()) write_json_file(o.report_json, j);
    if (!o.emit_certificate.empty() && !r.certificate.is_null()) write_json_file(o.emit_certificate, r.certificate);
    if (!o.out.empty()) {
        std::filesystem::create_directories(o.out);
        auto dir = std::filesystem::path(o.out);
        for (std::size_t i = 0; i < r.reports.size(); ++i)
            write_json_file((dir / ("stage" + std::to_string(i + 1) + ".json")).string(), r.reports[i].to_json());
        write_json_file((dir / (verb + ".json")).string(), j);
        if (!r.certificate.is_null()) write_json_file((dir / "certificate.json").string(), r.certificate);
    }
    return r.exit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gapped dg algebra toolkit: validation, deformation and obstruction engines"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s, bool project_required) {
        auto* pos = s->add_option("project", o.project, "project file");
        if (project_required) pos->required();
        s->add_option("--backend", o.backend, "backend or project description file");
        s->add_option("--mc", o.mc, "MC dataset file");
        s->add_option("--cutoff", o.cutoff, "energy cutoff p/q");
        s->add_option("--convention", o.convention, "MC sign convention: thm or lie");
        s->add_option("--kmax", o.kmax, "largest marked-point count in validation windows");
        s->add_option("--json-report", o.report_json, "write the JSON report to this file");
        s->add_option("--out", o.out, "directory for stage reports and artifacts");
        s->add_flag("--json", o.json_stdout, "print the JSON report instead of text");
    };

    auto* validate = app.add_subcommand("validate", "check grading, backend and state identities");
    common(validate, false);
    auto* deform = app.add_subcommand("deform", "build the curved deformation from an MC element");
    common(deform, false);
    auto* solve = app.add_subcommand("solve-bounding-chain", "kill the curvature level by level");
    common(solve, false);
    solve->add_option("--emit-certificate", o.emit_certificate, "write the obstruction certificate");
    auto* obstruct = app.add_subcommand("obstruct", "run the elimination engine");
    common(obstruct, false);
    obstruct->add_option("--emit-certificate", o.emit_certificate, "write the certificate");
    auto* spectral = app.add_subcommand("spectral", "energy filtration spectral sequence");
    common(spectral, false);
    spectral->add_option("--lambda0", o.lambda0, "filtration step p/q");
    spectral->add_option("--r-max", o.r_max, "last page");
    auto* replay = app.add_subcommand("replay-certificate", "recheck a certificate against a project");
    common(replay, false);
    replay->add_option("--certificate", o.certificate_in, "certificate file")->required();
    auto* pipeline = app.add_subcommand("pipeline", "validate, deform, solve, displace, eliminate, certify");
    common(pipeline, false);
    pipeline->add_option("--emit-certificate", o.emit_certificate, "write the certificate");

    CLI11_PARSE(app, argc, argv);

    try {
        if (o.project.empty() && o.backend.empty()) throw ParseError("a project file or --backend is required");
        std::optional<std::string> file;
        if (!o.project.empty()) file = o.project;
        Project p = load_project(file, overrides(o));
        if (*validate) return emit(o, "validate", cmd_validate(p));
        if (*deform) return emit(o, "deform", cmd_deform(p));
        if (*solve) return emit(o, "solve-bounding-chain", cmd_solve(p));
        if (*obstruct) return emit(o, "obstruct", cmd_obstruct(p));
        if (*spectral) return emit(o, "spectral", cmd_spectral(p));
        if (*replay) return emit(o, "replay-certificate", cmd_replay(p, read_json_file(o.certificate_in)));
        if (*pipeline) return emit(o, "pipeline", cmd_pipeline(p));
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
