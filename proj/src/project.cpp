#include "gdga/project.hpp"

#include <filesystem>
#include <sstream>

#include "gdga/io.hpp"
#include "gdga/validate.hpp"

namespace gdga {

namespace fs = std::filesystem;

MCData mc_from_json(const json& j, const ClassGroup& g, const std::string& path) {
    if (!j.is_object() || !j.contains("M")) throw ParseError(path + ": missing field \"M\"");
    MCData mc;
    mc.M = element_from_json(j.at("M"), g, path + ".M");
    bool ge = j.contains("N_geq0"), z = j.contains("N0");
    if (ge != z) throw ParseError(path + ": N_geq0 and N0 must be given together");
    if (ge) {
        mc.N_geq0 = element_from_json(j.at("N_geq0"), g, path + ".N_geq0");
        mc.N0 = element_from_json(j.at("N0"), g, path + ".N0");
        mc.has_displacement = true;
    }
    return mc;
}

json mc_to_json(const ClassGroup& g, const MCData& mc) {
    json j{{"M", element_to_json(g, mc.M)}};
    if (mc.has_displacement) {
        j["N_geq0"] = element_to_json(g, mc.N_geq0);
        j["N0"] = element_to_json(g, mc.N0);
    }
    return j;
}

namespace {

// Files referenced from a project are resolved relative to it.
json resolve(const json& j, const fs::path& dir) {
    if (!j.is_string()) return j;
    fs::path p = j.get<std::string>();
    if (p.is_relative()) p = dir / p;
    return read_json_file(p.string());
}

template <class F>
auto in_file(const std::string& file, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        if (file.empty()) throw;
        throw ParseError(file + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError((file.empty() ? std::string("<project>") : file) + ": " + e.what());
    }
}

}  // namespace

Project load_project(const std::optional<std::string>& file, const ProjectOverrides& o) {
    Project p;
    json root = json::object();
    fs::path dir = fs::current_path();
    if (file) {
        root = read_json_file(*file);
        if (!root.is_object()) throw ParseError(*file + ": <root>: expected an object");
        p.path = *file;
        dir = fs::path(*file).parent_path();
    }
    if (o.backend_file) {
        json b = read_json_file(*o.backend_file);
        if (!b.is_object()) throw ParseError(*o.backend_file + ": <root>: expected an object");
        if (b.contains("kind")) {
            root["backend"] = b;
        } else {
            for (const char* key : {"name", "group", "monoid", "module", "backend", "kmax", "deform_kmax"})
                if (b.contains(key)) root[key] = b[key];
            if (b.contains("backend") && b["backend"].is_string()) {
                fs::path bp = b["backend"].get<std::string>();
                if (bp.is_relative()) root["backend"] = (fs::path(*o.backend_file).parent_path() / bp).string();
            }
        }
        if (p.path.empty()) {
            p.path = *o.backend_file;
            dir = fs::path(*o.backend_file).parent_path();
        }
    }
    if (root.empty()) throw ParseError("no project or backend file given");
    const std::string& f = p.path;

    in_file(f, [&] {
        p.name = root.value("name", fs::path(f).stem().string());
        if (!root.contains("group")) throw ParseError("<root>: missing field \"group\"");
        p.group = group_from_json(root.at("group"));
        if (!root.contains("monoid")) throw ParseError("<root>: missing field \"monoid\"");
        json mj = root.at("monoid");
        if (o.cutoff) mj["cutoff"] = to_string(*o.cutoff);
        p.monoid = monoid_from_json(mj, p.group);
        p.module = module_from_json(root.value("module", json::object()), p.group, p.monoid);
        if (!root.contains("backend")) throw ParseError("<root>: missing field \"backend\"");
        p.backend_spec = resolve(root.at("backend"), dir);
        p.backend = load_backend(p.backend_spec, p.group);
        p.kmax = o.kmax ? *o.kmax : root.value("kmax", 3);
        p.deform_kmax = std::min(p.kmax, root.value("deform_kmax", 3));
        if (p.kmax < 0) throw ParseError("kmax: must be non-negative");
        p.convention = o.convention ? *o.convention : parse_convention(root.value("convention", "thm"));
        p.seed = root.value("seed", std::uint64_t{0});
        if (root.contains("spectral")) {
            const auto& s = root.at("spectral");
            if (s.contains("lambda0")) p.spectral.lambda0 = rational_from_json(s.at("lambda0"), "spectral.lambda0");
            p.spectral.r_max = s.value("r_max", p.spectral.r_max);
            if (s.contains("degrees")) {
                p.spectral.smin = s.at("degrees").at(0).get<long long>();
                p.spectral.smax = s.at("degrees").at(1).get<long long>();
            }
        }
        if (o.lambda0) p.spectral.lambda0 = o.lambda0;
        if (o.r_max) p.spectral.r_max = *o.r_max;
        return 0;
    });

    std::optional<json> mcj;
    std::string mcfile = f;
    if (o.mc_file) {
        mcj = read_json_file(*o.mc_file);
        mcfile = *o.mc_file;
    } else if (root.contains("mc")) {
        mcj = in_file(f, [&] { return resolve(root.at("mc"), dir); });
    }
    if (mcj) {
        in_file(mcfile, [&] {
            if (mcj->contains("cutoff") && rational_from_json(mcj->at("cutoff"), "mc.cutoff") != p.monoid.cutoff)
                throw ParseError("mc.cutoff: differs from the monoid cutoff " + to_string(p.monoid.cutoff));
            p.mc = mc_from_json(*mcj, p.group);
            return 0;
        });
    }
    p.algebra = std::make_shared<StateAlgebra>(p.backend, p.monoid.cutoff);
    return p;
}

json CommandResult::to_json() const {
    json r = json::array();
    for (const auto& x : reports) r.push_back(x.to_json());
    json j{{"status", status}, {"exit", exit}, {"reports", r}, {"data", data}};
    if (!certificate.is_null()) j["certificate"] = certificate;
    return j;
}

std::string CommandResult::to_text() const {
    std::ostringstream os;
    for (const auto& r : reports) os << r.to_text();
    os << "status: " << status << " (exit " << exit << ")\n";
    return os.str();
}

namespace {

// Stages shared by deform, solve, obstruct, pipeline and replay.  Each step returns
// false once the result is final.
struct Run {
    const Project& p;
    CommandResult res;
    std::optional<CurvedDeformation> defo;
    Element b{Sector::Open, -1};
    std::optional<DisplacedTwist> disp;

    explicit Run(const Project& pr) : p(pr) {}

    bool finish(int code, const std::string& status) {
        res.exit = code;
        res.status = status;
        return false;
    }
    bool push(Report r, const std::string& failure) {
        bool ok = r.ok();
        res.reports.push_back(std::move(r));
        return ok || finish(kFailure, failure);
    }

    bool validate() {
        const auto& A = *p.algebra;
        Window w{p.module.enumerated, p.kmax};
        Report m = validate_monoid(p.group, p.monoid);
        m.merge(validate_module(p.group, p.module));
        m.title = "grading";
        if (!push(std::move(m), "validation failed")) return false;
        if (!push(validate_backend(p.backend ? *p.backend : A.backend(), w), "validation failed")) return false;
        return push(validate_state(A, w), "validation failed");
    }

    bool deform() {
        if (!p.mc) return finish(kFailure, "missing MC dataset");
        const auto& A = *p.algebra;
        OpenBasis B = open_basis(A, p.monoid.enumerated, p.deform_kmax);
        DeformationResult d = deform_from_mc(A, p.monoid, p.mc->M, p.convention, B);
        defo = d.defo;
        res.data["convention"] = to_string(p.convention);
        res.data["m0"] = element_to_json(p.group, defo->m0);
        return push(std::move(d.report), "deformation failed");
    }

    bool solve() {
        BoundingResult s = solve_bounding_chain(*defo, p.monoid);
        if (!s.solved) {
            res.reports.push_back(std::move(s.report));
            if (!s.certificate.is_null()) {
                res.certificate = json{{"kind", "bounding-chain-obstruction"}, {"obstruction", s.certificate}};
                res.data["obstructed_class"] = s.certificate["class"];
                return finish(kObstructed, "obstructed");
            }
            return finish(kFailure, "bounding chain failed");
        }
        b = s.b;
        res.data["b"] = element_to_json(p.group, b);
        Report sq;
        sq.title = "twisted differential";
        check_square_zero(sq.add("twisted m1 squares to zero"), *p.algebra, m1_twisted(*defo, b),
                          open_basis(*p.algebra, p.monoid.enumerated, p.deform_kmax));
        s.report.merge(sq);
        return push(std::move(s.report), "bounding chain failed");
    }

    bool displace() {
        if (!p.mc->has_displacement) return finish(kFailure, "missing displacement data");
        Report r = mc_check_displacement(*p.algebra, p.monoid, p.module, *p.mc, p.convention, Q(0));
        if (!push(std::move(r), "displacement data failed")) return false;
        disp = displaced_twist(*defo, b, p.monoid, p.module, *p.mc);
        res.data["displaced"] = {{"N_geq0", element_to_json(p.group, disp->N_geq0)},
                                 {"N0", element_to_json(p.group, disp->N0)},
                                 {"notes", disp->notes}};
        return push(disp->report, "displaced twist failed");
    }

    EliminationInput input() const {
        EliminationInput in;
        in.defo = &*defo;
        in.b = b;
        in.N_geq0 = disp->N_geq0;
        in.N0 = disp->N0;
        return in;
    }

    bool upto_displacement() { return deform() && solve() && displace(); }

    void eliminate_and_certify() {
        EliminationInput in = input();
        EliminationState st = eliminate(in, p.monoid, p.module);
        res.reports.push_back(st.report);
        if (st.status == EliminationStatus::PreconditionFailed) {
            finish(kFailure, "elimination preconditions failed");
            return;
        }
        res.certificate = certify(*p.algebra, st);
        Report rp = replay_certificate(in, p.monoid, p.module, res.certificate);
        rp.title = "certificate replay";
        if (!push(std::move(rp), "certificate replay failed")) return;
        if (st.status == EliminationStatus::ContradictionCertified) {
            finish(kOk, "contradiction-certified");
        } else {
            res.data["surviving_class"] = st.witness["class"];
            finish(kObstructed, "surviving-class");
        }
    }
};

}  // namespace

CommandResult cmd_validate(const Project& p) {
    Run r(p);
    if (r.validate()) r.finish(kOk, "ok");
    return r.res;
}

CommandResult cmd_deform(const Project& p) {
    Run r(p);
    if (r.deform()) r.finish(kOk, "ok");
    return r.res;
}

CommandResult cmd_solve(const Project& p) {
    Run r(p);
    if (r.deform() && r.solve()) r.finish(kOk, "solved");
    return r.res;
}

CommandResult cmd_obstruct(const Project& p) {
    Run r(p);
    if (r.upto_displacement()) r.eliminate_and_certify();
    return r.res;
}

CommandResult cmd_pipeline(const Project& p) {
    Run r(p);
    if (r.validate() && r.upto_displacement()) r.eliminate_and_certify();
    return r.res;
}

CommandResult cmd_replay(const Project& p, const json& certificate) {
    Run r(p);
    if (!r.upto_displacement()) return r.res;
    Report rp = replay_certificate(r.input(), p.monoid, p.module, certificate);
    rp.title = "certificate replay";
    if (r.push(std::move(rp), "certificate replay failed")) r.finish(kOk, "replayed");
    return r.res;
}

CommandResult cmd_spectral(const Project& p) {
    Run r(p);
    const auto& A = *p.algebra;
    LinearOp D = [&A](const Element& x) { return A.d(x); };
    std::string op = "d";
    if (p.mc) {
        if (!r.deform()) return r.res;
        bool flat = true;
        for (const auto& a : p.monoid.enumerated)
            if (trusted(p.group, r.defo->m0, a) && !r.defo->m0.component(a).is_zero()) flat = false;
        if (flat) {
            D = [d = *r.defo](const Element& x) { return d.m1(x); };
            op = "m1";
        } else {
            if (!r.solve()) return r.res;
            D = m1_twisted(*r.defo, r.b);
            op = "m1^b";
        }
    }
    const auto& classes = p.monoid.enumerated;
    Q lambda0 = 1;
    if (p.spectral.lambda0) lambda0 = *p.spectral.lambda0;
    else if (auto gap = min_energy_gap(p.group, classes)) lambda0 = *gap / 2;
    try {
        SpectralSequence ss =
            spectral_sequence(A, D, classes, lambda0, p.spectral.r_max, p.spectral.smin, p.spectral.smax);
        r.res.data = ss.to_json();
        r.res.data["operator"] = op;
        ss.report.title = "spectral sequence";
        if (r.push(std::move(ss.report), "spectral sequence checks failed")) r.finish(kOk, "ok");
    } catch (const std::domain_error& e) {
        r.res.data["error"] = e.what();
        r.finish(kFailure, std::string("inadmissible lambda0: ") + e.what());
    }
    return r.res;
}

}  // namespace gdga
