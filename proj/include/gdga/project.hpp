#pragma once

#include <optional>
#include <string>

#include "gdga/backend.hpp"
#include "gdga/deformation.hpp"
#include "gdga/obstruction.hpp"

namespace gdga {

struct SpectralSettings {
    std::optional<Q> lambda0;  // default: half the minimum energy gap
    int r_max = 4;
    long long smin = -3, smax = 2;
};

struct Project {
    std::string path;
    std::string name;
    ClassGroup group;
    CurveMonoid monoid;
    PerturbedClassModule module;
    BackendPtr backend;
    std::shared_ptr<StateAlgebra> algebra;
    int kmax = 3;
    int deform_kmax = 3;  // basis used for the curved identities and (m1^b)^2
    Convention convention = Convention::Theorem;
    std::uint64_t seed = 0;
    std::optional<MCData> mc;
    SpectralSettings spectral;
    json backend_spec;
};

struct ProjectOverrides {
    std::optional<std::string> backend_file;  // replaces the project's group/monoid/module/backend
    std::optional<std::string> mc_file;
    std::optional<Q> cutoff;
    std::optional<Convention> convention;
    std::optional<int> kmax;
    std::optional<Q> lambda0;
    std::optional<int> r_max;
};

MCData mc_from_json(const json& j, const ClassGroup& g, const std::string& path = "mc");
json mc_to_json(const ClassGroup& g, const MCData& mc);

Project load_project(const std::optional<std::string>& file, const ProjectOverrides& o = {});

// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kFailure = 1, kObstructed = 2 };

struct CommandResult {
    int exit = kOk;
    std::string status;
    std::vector<Report> reports;
    json data = json::object();
    json certificate;  // null unless the command produced one

    json to_json() const;
    std::string to_text() const;
};

CommandResult cmd_validate(const Project& p);
CommandResult cmd_deform(const Project& p);
CommandResult cmd_solve(const Project& p);
CommandResult cmd_obstruct(const Project& p);
CommandResult cmd_spectral(const Project& p);
CommandResult cmd_replay(const Project& p, const json& certificate);
// validate, deform, solve, displace, eliminate and certify in one run.
CommandResult cmd_pipeline(const Project& p);

}  // namespace gdga
