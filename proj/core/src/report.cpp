#include "cdqs/report.hpp"

#include "cdqs/errors.hpp"
#include "cdqs/zoo.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef CDQS_VERSION
#define CDQS_VERSION "0.0.0"
#endif

namespace cdqs {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> frouting_names() { return {"route_direct", "route_teleport", "route_keep"}; }

Json rows_json(const VerificationReport& r, bool timing) {
    Json rows = Json::array();
    for (const auto& w : r.rows) {
        rows.push_back({{"x", w.x},
                        {"y", w.y},
                        {"f", w.f ? 1 : 0},
                        {"eps_ub", number(w.eps_ub)},
                        {"eps_lb", number(w.eps_lb)},
                        {"delta_ub", number(w.delta_ub)},
                        {"success", number(w.success)},
                        {"status", w.status},
                        {"seconds", number(timing ? w.seconds : 0.0)}});
    }
    return rows;
}

// Field accessors with addressed errors.
const Json& field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ArgumentError(where + ": missing field '" + key + "'");
    return j.at(key);
}

int int_field(const Json& j, const std::string& key, const std::string& where, int fallback, bool required) {
    if (!j.contains(key)) {
        if (required) throw ArgumentError(where + ": missing field '" + key + "'");
        return fallback;
    }
    if (!j.at(key).is_number_integer()) throw ArgumentError(where + ": field '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

double num_field(const Json& j, const std::string& key, const std::string& where, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ArgumentError(where + ": field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

std::string str_field(const Json& j, const std::string& key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_string()) throw ArgumentError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

Predicate parse_predicate(const Json& j, int n, const std::string& where) {
    const std::string s = str_field(j, "predicate", where);
    try {
        return Predicate::named(s, n);
    } catch (const ArgumentError&) {
    }
    try {
        return Predicate::from_hex(n, s, j.value("predicate_name", std::string("custom")));
    } catch (const ArgumentError& e) {
        throw ArgumentError(where + ": field 'predicate': not a known name or a valid hex table (" + e.what() + ")");
    }
}

fs::path resolve(const fs::path& base, const std::string& file) {
    const fs::path p(file);
    return p.is_absolute() ? p : base / p;
}

ComplexMatrix load_resource(const Json& j, const fs::path& base, int& d_l, int& d_r, const std::string& where) {
    const std::string res = j.contains("resource") ? str_field(j, "resource", where) : "trivial";
    if (res == "trivial") {
        d_l = d_r = 1;
        return ComplexMatrix::Ones(1, 1);
    }
    if (res == "max_entangled") {
        d_l = int_field(j, "d_L", where, 0, true);
        d_r = int_field(j, "d_R", where, d_l, false);
        if (d_l != d_r) throw ArgumentError(where + ": max_entangled resource needs d_L = d_R");
        return max_entangled(d_l);
    }
    d_l = int_field(j, "d_L", where, 0, true);
    d_r = int_field(j, "d_R", where, 0, true);
    try {
        return load_matrix(resolve(base, res).string());
    } catch (const ArgumentError& e) {
        throw ArgumentError(where + ": field 'resource': " + e.what());
    }
}

std::vector<QuantumChannel> load_channels(const Json& j, const std::string& key, const fs::path& base,
                                          const SystemDims& in, const SystemDims& out, const std::string& where) {
    const Json& arr = field(j, key, where);
    if (!arr.is_array()) throw ArgumentError(where + ": field '" + key + "' must be an array of file names");
    std::vector<QuantumChannel> chans;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string addr = where + ": field '" + key + "[" + std::to_string(i) + "]'";
        if (!arr[i].is_string()) throw ArgumentError(addr + " must be a file name");
        try {
            const QuantumChannel raw = load_channel(resolve(base, arr[i].get<std::string>()).string());
            if (raw.d_in() != in.total() || raw.d_out() != out.total())
                throw ArgumentError("dimensions " + std::to_string(raw.d_in()) + " -> " + std::to_string(raw.d_out()) +
                                    " do not match " + in.describe() + " -> " + out.describe());
            chans.emplace_back(raw.choi(), in, out);
        } catch (const ArgumentError& e) {
            throw ArgumentError(addr + ": " + e.what());
        }
    }
    return chans;
}

int pair_field(const Json& j, const std::string& key, std::size_t idx, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_array() || v.size() != 2 || !v[idx].is_number_integer())
        throw ArgumentError(where + ": field '" + key + "' must be a pair of integers");
    return v[idx].get<int>();
}

CdsProtocol load_cds(const Json& j, int n, const std::string& where) {
    CdsProtocol c;
    c.name = j.value("name", std::string("custom_cds"));
    c.f = parse_predicate(j, n, where);
    c.secret_size = int_field(j, "secret_size", where, 2, true);
    c.randomness_size = int_field(j, "randomness_size", where, 1, true);
    c.m0_size = int_field(j, "m0_size", where, 1, true);
    c.m1_size = int_field(j, "m1_size", where, 1, true);
    if (j.contains("randomness_weights")) c.randomness_weights = j.at("randomness_weights").get<std::vector<double>>();
    const auto m0 = field(j, "m0", where).get<std::vector<std::vector<int>>>();
    const auto m1 = field(j, "m1", where).get<std::vector<std::vector<int>>>();
    const int nx = c.f.inputs_per_party();
    if (int(m0.size()) != nx) throw ArgumentError(where + ": field 'm0' needs one row per x");
    if (int(m1.size()) != nx) throw ArgumentError(where + ": field 'm1' needs one row per y");
    for (std::size_t x = 0; x < m0.size(); ++x)
        if (long(m0[x].size()) != long(c.secret_size) * c.randomness_size)
            throw ArgumentError(where + ": field 'm0[" + std::to_string(x) + "]' needs secret_size * randomness_size entries");
    for (std::size_t y = 0; y < m1.size(); ++y)
        if (int(m1[y].size()) != c.randomness_size)
            throw ArgumentError(where + ": field 'm1[" + std::to_string(y) + "]' needs randomness_size entries");
    const int rs = c.randomness_size;
    c.m0 = [m0, rs](int x, int z, int r) { return m0[std::size_t(x)][std::size_t(z * rs + r)]; };
    c.m1 = [m1](int y, int r) { return m1[std::size_t(y)][std::size_t(r)]; };
    c.declared_eps = num_field(j, "declared_eps", where, 0.0);
    c.declared_delta = num_field(j, "declared_delta", where, 0.0);
    try {
        c.validate();
    } catch (const ArgumentError& e) {
        throw ArgumentError(where + ": " + e.what());
    }
    return c;
}

LoadedProtocol load_config(const fs::path& path, int n_override) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open protocol file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        long line = 1, col = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ArgumentError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                            ": JSON parse error: " + e.what());
    }
    const std::string where = path.string();
    if (!j.is_object()) throw ArgumentError(where + ": top level must be an object");
    const std::string kind = str_field(j, "kind", where);
    const int n = int_field(j, "n", where, n_override, n_override <= 0);
    if (kind == "cds") return load_cds(j, n, where);
    if (kind != "cdqs" && kind != "frouting") throw ArgumentError(where + ": field 'kind' must be cds, cdqs or frouting");
    const fs::path base = path.parent_path();
    const Predicate f = parse_predicate(j, n, where);
    const int d_q = int_field(j, "d_Q", where, 2, true);
    int d_l = 1, d_r = 1;
    const ComplexMatrix psi = load_resource(j, base, d_l, d_r, where);
    DensityState resource;
    try {
        resource = make_resource(psi, d_l, d_r);
    } catch (const ArgumentError& e) {
        throw ArgumentError(where + ": field 'resource': " + e.what());
    }
    const SystemDims ain{{"Q", d_q}, {"L", d_l}};
    const SystemDims bin = SystemDims::single("R", d_r);
    const std::string name = j.value("name", std::string("custom"));
    try {
        if (kind == "cdqs") {
            CdqsProtocol p;
            p.name = name;
            p.f = f;
            p.d_q = d_q;
            p.d_l = d_l;
            p.d_r = d_r;
            p.resource = resource;
            const int m0 = int_field(j, "d_M0", where, 0, true), m1 = int_field(j, "d_M1", where, 0, true);
            p.alice = load_channels(j, "alice", base, ain, SystemDims::single("M0", m0), where);
            p.bob = load_channels(j, "bob", base, bin, SystemDims::single("M1", m1), where);
            p.declared_eps = num_field(j, "declared_eps", where, 0.0);
            p.declared_delta = num_field(j, "declared_delta", where, 0.0);
            p.validate();
            return p;
        }
        FRoutingProtocol p;
        p.name = name;
        p.f = f;
        p.d_q = d_q;
        p.d_l = d_l;
        p.d_r = d_r;
        p.resource = resource;
        p.alice = load_channels(j, "alice", base, ain,
                                SystemDims{{"AS", pair_field(j, "alice_out", 0, where)}, {"AK", pair_field(j, "alice_out", 1, where)}},
                                where);
        p.bob = load_channels(j, "bob", base, bin,
                              SystemDims{{"BS", pair_field(j, "bob_out", 0, where)}, {"BK", pair_field(j, "bob_out", 1, where)}},
                              where);
        p.declared_eps = num_field(j, "declared_eps", where, 0.0);
        p.validate();
        return p;
    } catch (const ArgumentError& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        throw ArgumentError(where + ": " + msg);
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

Json common_config(const std::string& kind, const std::string& name, const Predicate& f, int d_q, int d_l, int d_r,
                   const DensityState& resource, const fs::path& dir) {
    fs::create_directories(dir);
    write_text(dir / "resource.mat", write_matrix(resource.matrix));
    return {{"kind", kind}, {"name", name},     {"n", f.n()},   {"predicate", f.to_hex()}, {"predicate_name", f.name()},
            {"d_Q", d_q},   {"d_L", d_l},      {"d_R", d_r},   {"resource", "resource.mat"}};
}

template <class P>
void write_channels(const P& p, Json& cfg, const fs::path& dir) {
    Json alice = Json::array(), bob = Json::array();
    for (std::size_t x = 0; x < p.alice.size(); ++x) {
        const std::string file = "alice_" + std::to_string(x) + ".choi";
        write_text(dir / file, write_channel(p.alice[x]));
        alice.push_back(file);
    }
    for (std::size_t y = 0; y < p.bob.size(); ++y) {
        const std::string file = "bob_" + std::to_string(y) + ".choi";
        write_text(dir / file, write_channel(p.bob[y]));
        bob.push_back(file);
    }
    cfg["alice"] = alice;
    cfg["bob"] = bob;
}

}  // namespace

std::string tool_version() { return CDQS_VERSION; }

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    if (v == 0.0) return 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return std::strtod(buf, nullptr);
}

Json to_json(const VerificationReport& r, bool timing) {
    return {{"protocol", r.protocol},
            {"protocol_kind", r.kind},
            {"predicate", r.predicate},
            {"n", r.n},
            {"declared_eps", number(r.declared_eps)},
            {"declared_delta", number(r.declared_delta)},
            {"tol", number(r.tol)},
            {"eps_hat", number(r.eps_hat)},
            {"delta_hat", number(r.delta_hat)},
            {"complete", r.complete},
            {"pass", r.pass},
            {"message_bits", r.message_bits},
            {"rows", rows_json(r, timing)}};
}

Json to_json(const OneWayReport& r) {
    Json rows = Json::array();
    for (const auto& w : r.rows)
        rows.push_back({{"x", w.x},
                        {"y", w.y},
                        {"f", w.f ? 1 : 0},
                        {"distance", number(w.distance)},
                        {"estimate", number(w.estimate)},
                        {"misclassified", w.misclassified},
                        {"gap_ok", w.gap_ok}});
    return {{"protocol", r.protocol},       {"mode", r.mode},
            {"threshold", number(r.threshold)}, {"lower", number(r.lower)},
            {"upper", number(r.upper)},     {"copies", r.copies},
            {"trials", r.trials},           {"message_qubits", number(r.message_qubits)},
            {"constant", number(r.constant)}, {"delta_fail", number(r.delta_fail)},
            {"eps_tilde", number(r.eps_tilde)}, {"seed", r.seed},
            {"misclassified", r.misclassified}, {"all_correct", r.all_correct},
            {"gap_ok", r.gap_ok},           {"rows", rows}};
}

Json to_json(const PpReport& r) {
    Json rows = Json::array();
    for (const auto& w : r.rows)
        rows.push_back({{"x", w.x},
                        {"y", w.y},
                        {"f", w.f ? 1 : 0},
                        {"hs_sq", number(w.hs_sq)},
                        {"accept", number(w.accept)},
                        {"bias", number(w.bias)}});
    return {{"protocol", r.protocol}, {"eps", number(r.eps)},     {"d", r.d},
            {"s0", number(r.s0)},     {"s", number(r.s)},         {"beta", number(r.beta)},
            {"qubits", number(r.qubits)}, {"cost", number(r.cost)}, {"marginal_ok", r.marginal_ok},
            {"delta_hat", number(r.delta_hat)}, {"valid", r.valid}, {"rows", rows}};
}

Json to_json(const QipTranscript& r) {
    return {{"protocol", r.protocol},
            {"ell", r.ell},
            {"copies", r.copies},
            {"completeness", number(r.completeness)},
            {"soundness_bound", number(r.soundness_bound)},
            {"eps", number(r.eps)},
            {"delta", number(r.delta)},
            {"t", number(r.t)},
            {"communication", number(r.communication)},
            {"completeness_ok", r.completeness_ok},
            {"soundness_ok", r.soundness_ok}};
}

Json to_json(const HvqszkResult& r) {
    Json real = Json::array(), sim = Json::array();
    for (long i = 0; i < r.real_state.rows(); ++i) {
        real.push_back(number(r.real_state(i, i).real()));
        sim.push_back(number(r.sim_state(i, i).real()));
    }
    return {{"x", r.x},
            {"y", r.y},
            {"pr_equal", number(r.pr_equal)},
            {"distance", number(r.distance)},
            {"bound", number(r.bound)},
            {"holds", r.holds},
            {"real_diagonal", real},
            {"sim_diagonal", sim}};
}

Json to_json(const AmplifyResult& r) {
    return {{"code", r.code},
            {"instance_error", number(r.instance_error)},
            {"measured_error", number(r.measured_error)},
            {"bound", number(r.bound)},
            {"holds", r.holds},
            {"status", r.status}};
}

Json to_json(const AmplifyParams& a) {
    return {{"alpha", number(a.alpha)},           {"beta", number(a.beta)},  {"gamma", number(a.gamma)},
            {"epsilon_in", number(a.epsilon_in)}, {"bound", number(a.bound)}, {"precondition", a.precondition}};
}

Json make_report(const ReportMeta& meta, const std::string& type, Json body, double wall_seconds) {
    const int max_iter = meta.sdp.max_iter > 0 ? meta.sdp.max_iter : default_max_iterations();
    return {{"tool", {{"name", "cdqs-lab"}, {"version", tool_version()}}},
            {"command", meta.command},
            {"type", type},
            {"seed", meta.seed},
            {"tolerances",
             {{"tol", number(meta.tol)},
              {"sdp_tol", number(meta.sdp.tol)},
              {"sdp_accept_tol", number(meta.sdp.accept_tol)},
              {"sdp_max_iter", max_iter}}},
            {"wall_seconds", number(meta.timing ? wall_seconds : 0.0)},
            {"result", std::move(body)}};
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

void emit_report(const Json& report, const std::string& path) {
    const std::string text = dump_report(report);
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("cannot write report to stdout");
        return;
    }
    write_text(path, text);
}

std::vector<std::string> protocol_catalog() {
    std::vector<std::string> names = protocol_names();
    for (const auto& s : frouting_names()) names.push_back(s);
    return names;
}

LoadedProtocol load_protocol(const std::string& source, int n) {
    if (fs::exists(source) && fs::is_regular_file(source)) return load_config(fs::path(source), n);
    if (n < 1) throw ArgumentError("protocol '" + source + "' needs n >= 1");
    if (is_cds_name(source)) return named_cds(source, n);
    if (source == "route_direct") return frouting_direct(Predicate::alice_bit(n), 2);
    if (source == "route_teleport") return frouting_teleport(Predicate::bob_bit(n), 2);
    if (source == "route_keep") return frouting_always_keep(Predicate::alice_bit(n), 2);
    for (const auto& s : protocol_names())
        if (s == source) return named_cdqs(source, n);
    throw ArgumentError("unknown protocol '" + source + "' (not a file and not in the catalog)");
}

std::string save_protocol(const CdqsProtocol& p, const std::string& dir) {
    p.validate();
    const fs::path d(dir);
    Json cfg = common_config("cdqs", p.name, p.f, p.d_q, p.d_l, p.d_r, p.resource, d);
    cfg["d_M0"] = p.d_m0();
    cfg["d_M1"] = p.d_m1();
    cfg["declared_eps"] = p.declared_eps;
    cfg["declared_delta"] = p.declared_delta;
    write_channels(p, cfg, d);
    write_text(d / "protocol.json", cfg.dump(2) + "\n");
    return (d / "protocol.json").string();
}

std::string save_protocol(const FRoutingProtocol& p, const std::string& dir) {
    p.validate();
    const fs::path d(dir);
    Json cfg = common_config("frouting", p.name, p.f, p.d_q, p.d_l, p.d_r, p.resource, d);
    const auto& ao = p.alice.front().out_dims();
    const auto& bo = p.bob.front().out_dims();
    cfg["alice_out"] = {ao.dim_of("AS"), ao.dim_of("AK")};
    cfg["bob_out"] = {bo.dim_of("BS"), bo.dim_of("BK")};
    cfg["declared_eps"] = p.declared_eps;
    write_channels(p, cfg, d);
    write_text(d / "protocol.json", cfg.dump(2) + "\n");
    return (d / "protocol.json").string();
}

}  // namespace cdqs
