#pragma once

#include "cdqs/amplify.hpp"
#include "cdqs/cds.hpp"
#include "cdqs/cdqs.hpp"
#include "cdqs/frouting.hpp"
#include "cdqs/reductions.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <variant>

namespace cdqs {

using Json = nlohmann::json;

std::string tool_version();

// Run metadata embedded in every report.
struct ReportMeta {
    std::string command;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    SdpOptions sdp;
    bool timing = true;  // false writes every duration as 0 for byte-stable output
};

// 12 significant digits; NaN and infinities become null.
Json number(double v);

Json to_json(const VerificationReport& r, bool timing = true);
Json to_json(const OneWayReport& r);
Json to_json(const PpReport& r);
Json to_json(const QipTranscript& r);
Json to_json(const HvqszkResult& r);
Json to_json(const AmplifyResult& r);
Json to_json(const AmplifyParams& a);

// Wraps a body with the tool version, seed, tolerances and wall time.
Json make_report(const ReportMeta& meta, const std::string& type, Json body, double wall_seconds);
// Sorted keys, two-space indent, trailing newline.
std::string dump_report(const Json& report);
// path "-" writes to stdout. Throws std::runtime_error on I/O failure.
void emit_report(const Json& report, const std::string& path);

using LoadedProtocol = std::variant<CdsProtocol, CdqsProtocol, FRoutingProtocol>;

// A zoo name (see protocol_catalog) or a JSON config file. Config errors
// name the offending field; parse errors give the line and column.
LoadedProtocol load_protocol(const std::string& source, int n);
std::vector<std::string> protocol_catalog();

// Writes dir/protocol.json with the resource and channels as sibling
// text files. Returns the config path.
std::string save_protocol(const CdqsProtocol& p, const std::string& dir);
std::string save_protocol(const FRoutingProtocol& p, const std::string& dir);

}  // namespace cdqs
