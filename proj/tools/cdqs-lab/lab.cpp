#include "lab.hpp"

#include "cdqs/amplify.hpp"
#include "cdqs/errors.hpp"
#include "cdqs/report.hpp"
#include "cdqs/transforms.hpp"
#include "cdqs/zoo.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>

namespace cdqs::lab {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CdqsProtocol as_cdqs(const LoadedProtocol& lp, const std::string& what) {
    if (const auto* p = std::get_if<CdqsProtocol>(&lp)) return *p;
    throw ArgumentError(what + " needs a CDQS protocol");
}

void report_failures(const VerificationReport& r, std::ostream& err) {
    for (const auto& w : r.rows) {
        std::ostringstream os;
        os << "row (x=" << w.x << ", y=" << w.y << ", f=" << w.f << ")";
        if (w.status != "optimal") {
            err << os.str() << ": status " << w.status << "\n";
        } else if ((r.kind == "frouting" || w.f) && w.eps_ub > r.declared_eps + r.tol) {
            err << os.str() << ": eps_ub " << w.eps_ub << " exceeds declared " << r.declared_eps << "\n";
        } else if (r.kind != "frouting" && !w.f && w.delta_ub > r.declared_delta + r.tol) {
            err << os.str() << ": delta_ub " << w.delta_ub << " exceeds declared " << r.declared_delta << "\n";
        } else if (!std::isnan(w.eps_lb) && w.eps_lb > w.eps_ub + 1e-6) {
            err << os.str() << ": eps_lb " << w.eps_lb << " above eps_ub " << w.eps_ub << "\n";
        }
    }
}

int verdict(const VerificationReport& r, std::ostream& err) {
    if (!r.complete) {
        err << "verification incomplete for " << r.protocol << "\n";
        report_failures(r, err);
        return kNumeric;
    }
    if (!r.pass) {
        err << "verification failed for " << r.protocol << "\n";
        report_failures(r, err);
        return kAssertion;
    }
    return kPass;
}

VerificationReport verify_any(const LoadedProtocol& lp, const RunConfig& cfg, const SdpOptions& sdp) {
    VerifyOptions vo;
    vo.tol = cfg.tol;
    vo.certify.sdp = sdp;
    return std::visit(
        [&](const auto& p) -> VerificationReport {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, CdsProtocol>) {
                VerificationReport r = verify_cds_exact(p);
                r.tol = cfg.tol;
                r.finalize();
                return r;
            } else if constexpr (std::is_same_v<T, CdqsProtocol>) {
                return verify_cdqs(p, vo);
            } else {
                return verify_frouting(p, vo);
            }
        },
        lp);
}

int run_verify(const RunConfig& cfg, const ReportMeta& meta, std::ostream& err) {
    const auto t0 = Clock::now();
    const VerificationReport r = verify_any(load_protocol(cfg.protocol, cfg.n), cfg, meta.sdp);
    emit_report(make_report(meta, "verify", to_json(r, cfg.timing), since(t0)), cfg.out);
    return verdict(r, err);
}

int run_transform(const RunConfig& cfg, const ReportMeta& meta, std::ostream& err) {
    const auto t0 = Clock::now();
    Json body;
    body["transform"] = cfg.action;
    int code = kPass;
    if (cfg.action == "negate") {
        const CdqsProtocol p = as_cdqs(load_protocol(cfg.protocol, cfg.n), "negate");
        const CdqsProtocol q = negate(p);
        const double bound = negation_message_bound(p);
        body["input"] = p.name;
        body["output"] = q.name;
        body["predicate"] = q.f.to_hex();
        body["predicate_name"] = q.f.name();
        body["message_qubits"] = number(q.message_qubits());
        body["message_bound"] = number(bound);
        body["declared_eps"] = number(q.declared_eps);
        body["declared_delta"] = number(q.declared_delta);
        if (q.message_qubits() > bound + 1e-9) {
            err << "negated message size " << q.message_qubits() << " exceeds bound " << bound << "\n";
            code = kAssertion;
        }
        if (!cfg.save_dir.empty()) body["saved"] = save_protocol(q, cfg.save_dir);
        if (cfg.verify_output) {
            VerifyOptions vo;
            vo.tol = cfg.tol;
            vo.certify.sdp = meta.sdp;
            const VerificationReport r = verify_cdqs(q, vo);
            body["verification"] = to_json(r, cfg.timing);
            code = std::max(code, verdict(r, err));
        }
    } else if (cfg.action == "and" || cfg.action == "or") {
        const Predicate f1 = Predicate::alice_bit(cfg.n), f2 = Predicate::bob_bit(cfg.n);
        CdqsProtocol q;
        if (cfg.action == "and") {
            q = and_compose(with_secret_noise(cdqs_direct(f1, 2), cfg.noise_eps),
                            with_secret_noise(cdqs_teleport(f2, 4), cfg.noise_eps));
        } else {
            q = or_compose(cdqs_direct(f1, 3, cfg.noise_eps), cdqs_teleport(f2, 3, cfg.noise_eps));
        }
        body["output"] = q.name;
        body["predicate"] = q.f.to_hex();
        body["noise_eps"] = number(cfg.noise_eps);
        body["message_qubits"] = number(q.message_qubits());
        if (!cfg.save_dir.empty()) body["saved"] = save_protocol(q, cfg.save_dir);
        VerifyOptions vo;
        vo.tol = cfg.tol;
        vo.certify.sdp = meta.sdp;
        const VerificationReport r = verify_cdqs(q, vo);
        body["verification"] = to_json(r, cfg.timing);
        code = verdict(r, err);
    } else if (cfg.action == "amplify") {
        const CdqsProtocol p = as_cdqs(load_protocol(cfg.protocol, cfg.n), "amplify");
        const CodeSpec c = code_catalog(cfg.code);
        int x1 = -1, y1 = -1;
        const int nx = p.f.inputs_per_party();
        for (int i = 0; i < nx * nx && x1 < 0; ++i)
            if (p.f(i / nx, i % nx)) {
                x1 = i / nx;
                y1 = i % nx;
            }
        if (x1 < 0) throw ArgumentError("amplify: predicate has no 1-input");
        noise_bound(c.m, c.t, cfg.noise_eps);  // refuses eps above the threshold
        const AmplifyResult a = amplify(protocol_instance(p, x1, y1, cfg.noise_eps, meta.sdp), c, meta.sdp);
        body["input"] = p.name;
        body["x"] = x1;
        body["y"] = y1;
        body["code"] = c.name;
        body["m"] = c.m;
        body["t"] = c.t;
        body["params"] = to_json(amplify_params(c, cfg.noise_eps));
        body["amplify"] = to_json(a);
        if (a.status != "optimal") code = kNumeric;
        else if (!a.holds) {
            err << "logical error " << a.measured_error << " exceeds bound " << a.bound << "\n";
            code = kAssertion;
        }
    } else {
        throw ArgumentError("unknown transform '" + cfg.action + "'");
    }
    emit_report(make_report(meta, "transform", body, since(t0)), cfg.out);
    return code;
}

int run_reduce(const RunConfig& cfg, const ReportMeta& meta, std::ostream& err) {
    const auto t0 = Clock::now();
    const CdqsProtocol p = as_cdqs(load_protocol(cfg.protocol, cfg.n), "reduce");
    Json body;
    int code = kPass;
    CertifyOptions co;
    co.sdp = meta.sdp;
    if (cfg.action == "oneway") {
        OneWayOptions o;
        o.mode = cfg.mode;
        o.copies = cfg.samples;
        o.trials = cfg.trials;
        o.seed = cfg.seed;
        o.eps = cfg.eps;
        const OneWayReport r = one_way_reduction(p, o);
        body = to_json(r);
        if (!r.gap_ok) {
            err << "distance inside the (" << r.lower << ", " << r.upper << ") gap\n";
            code = kAssertion;
        }
        if (!r.all_correct) {
            err << r.misclassified << " misclassified rows\n";
            code = kAssertion;
        }
    } else if (cfg.action == "pp") {
        const PpReport r = pp_reduction(p, cfg.eps, meta.sdp);
        body = to_json(r);
        if (!r.valid) {
            err << "PP reduction invalid (beta " << r.beta << ", delta_hat " << r.delta_hat << ")\n";
            code = kAssertion;
        }
    } else if (cfg.action == "qip") {
        const QipTranscript r = qip2_from_cdqs(p, cfg.ell, co);
        body = to_json(r);
        if (!r.completeness_ok || !r.soundness_ok) {
            err << "QIP bounds violated (completeness " << r.completeness << ", soundness " << r.soundness_bound << ")\n";
            code = kAssertion;
        }
    } else if (cfg.action == "zk") {
        const CdqsProtocol q = cfg.noise > 0 ? with_message_noise(p, cfg.noise) : p;
        const HvqszkResult r = hvqszk_check(q, cfg.ell, co);
        body = to_json(r);
        body["noise"] = number(cfg.noise);
        if (!r.holds) {
            err << "distance " << r.distance << " exceeds 2 sqrt(1 - Pr[z = z']) = " << r.bound << "\n";
            code = kAssertion;
        }
    } else {
        throw ArgumentError("unknown reduction '" + cfg.action + "'");
    }
    body["reduction"] = cfg.action;
    emit_report(make_report(meta, "reduce", body, since(t0)), cfg.out);
    return code;
}

int run_list(std::ostream& out) {
    out << "protocols:\n";
    for (const auto& s : protocol_catalog()) {
        const char* kind = is_cds_name(s) ? "cds" : s.rfind("route_", 0) == 0 ? "frouting" : "cdqs";
        out << "  " << s << " (" << kind << ")\n";
    }
    out << "codes:\n";
    for (const auto& s : code_names()) out << "  " << s << "\n";
    return kPass;
}

}  // namespace

void RunConfig::validate() const {
    if (!(tol > 0.0 && tol <= 0.1)) throw ArgumentError("tolerance must lie in (0, 0.1]");
    if (n < 1 || n > Predicate::kMaxBits) throw ArgumentError("n must lie in [1, 6]");
    if (ell < 1) throw ArgumentError("ell must be positive");
    if (trials < 1) throw ArgumentError("trials must be positive");
    if (noise < 0.0 || noise > 1.0) throw ArgumentError("noise must lie in [0, 1]");
    if (noise_eps < 0.0) throw ArgumentError("noise-eps must be nonnegative");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        ReportMeta meta;
        meta.command = cfg.command + (cfg.action.empty() ? "" : " " + cfg.action);
        meta.seed = cfg.seed;
        meta.tol = cfg.tol;
        meta.timing = cfg.timing;
        if (cfg.command == "verify") return run_verify(cfg, meta, err);
        if (cfg.command == "transform") return run_transform(cfg, meta, err);
        if (cfg.command == "reduce") return run_reduce(cfg, meta, err);
        if (cfg.command == "list-protocols") return run_list(out);
        err << "unknown command '" << cfg.command << "'\n";
        return kUsage;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const AssertionFailure& e) {
        err << "assertion failed: " << e.what() << "\n";
        return kAssertion;
    } catch (const CapacityError& e) {
        err << "capacity: " << e.what() << "\n";
        return kNumeric;
    } catch (const NumericError& e) {
        err << "numeric: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::bad_alloc&) {
        err << "capacity: out of memory\n";
        return kNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification and reduction lab for conditional disclosure of quantum secrets", "cdqs-lab"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* s) {
        s->add_option("--protocol", cfg.protocol, "catalog name or protocol JSON file");
        s->add_option("--n", cfg.n, "input bits per party");
        s->add_option("--tol", cfg.tol, "pass tolerance on certified errors");
        s->add_option("--seed", cfg.seed, "random seed recorded in the report");
        s->add_option("--out", cfg.out, "report path, - for stdout");
        s->add_flag("--timing,!--no-timing", cfg.timing, "write durations as 0 for reproducible reports");
    };

    auto* verify = app.add_subcommand("verify", "certify (eps, delta) of a protocol");
    common(verify);

    auto* transform = app.add_subcommand("transform", "negate, compose or amplify a protocol");
    common(transform);
    transform->add_option("action", cfg.action, "negate | and | or | amplify")
        ->required()
        ->check(CLI::IsMember({"negate", "and", "or", "amplify"}));
    transform->add_option("--code", cfg.code, "five_qubit | steane");
    transform->add_option("--noise-eps", cfg.noise_eps, "per-instance diamond error");
    transform->add_option("--save", cfg.save_dir, "write the transformed protocol to this directory");
    transform->add_flag("--verify", cfg.verify_output, "certify the transformed protocol");

    auto* reduce = app.add_subcommand("reduce", "run a communication-complexity reduction");
    common(reduce);
    reduce->add_option("action", cfg.action, "oneway | pp | qip | zk")
        ->required()
        ->check(CLI::IsMember({"oneway", "pp", "qip", "zk"}));
    reduce->add_option("--mode", cfg.mode, "oracle | sampled")->check(CLI::IsMember({"oracle", "sampled"}));
    reduce->add_option("--samples", cfg.samples, "tomography copies (0: derived)");
    reduce->add_option("--trials", cfg.trials, "repetitions in sampled mode");
    reduce->add_option("--ell", cfg.ell, "secret bits for qip and zk");
    reduce->add_option("--eps", cfg.eps, "assumed correctness error");
    reduce->add_option("--noise", cfg.noise, "depolarizing noise on Alice's message (zk)");

    app.add_subcommand("list-protocols", "list catalog protocols and codes");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }
    for (const auto* s : {verify, transform, reduce})
        if (s->parsed()) cfg.command = s->get_name();
    if (cfg.command.empty()) cfg.command = "list-protocols";
    return run(cfg, out, err);
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return main_entry(args, std::cout, std::cerr);
}

}  // namespace cdqs::lab
