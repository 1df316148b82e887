#include "lab.hpp"

#include "cdqs/report.hpp"
#include "cdqs/zoo.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using namespace cdqs;
namespace fs = std::filesystem;

namespace {

struct LabRun {
    int code;
    std::string out, err;
};

LabRun run_lab(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = lab::main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("cdqs_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST(cli, verify_equality_passes) {
    const fs::path d = scratch("verify");
    const LabRun r = run_lab({"verify", "--protocol", "eq", "--n", "2", "--out", (d / "r.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(slurp(d / "r.json"));
    EXPECT_EQ(j["result"]["rows"].size(), 16u);
    EXPECT_LE(j["result"]["eps_hat"].get<double>(), 1e-6);
    EXPECT_LE(j["result"]["delta_hat"].get<double>(), 1e-6);
    EXPECT_EQ(j["seed"], 1);
    EXPECT_TRUE(j.contains("wall_seconds"));
    EXPECT_EQ(j["tool"]["name"], "cdqs-lab");
}

TEST(cli, reports_are_byte_identical_without_timing) {
    const fs::path d = scratch("stable");
    for (const char* f : {"a.json", "b.json"})
        ASSERT_EQ(run_lab({"verify", "--protocol", "cds_ip", "--n", "2", "--seed", "5", "--no-timing", "--out",
                       (d / f).string()})
                      .code,
                  0);
    EXPECT_EQ(slurp(d / "a.json"), slurp(d / "b.json"));
}

TEST(cli, failing_rows_exit_two) {
    const LabRun r = run_lab({"verify", "--protocol", "route_keep", "--out", "/dev/null"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("row (x=1, y=1"), std::string::npos) << r.err;
}

TEST(cli, usage_errors_exit_one) {
    EXPECT_EQ(run_lab({}).code, 1);
    EXPECT_EQ(run_lab({"verify", "--tol", "0.5"}).code, 1);
    EXPECT_EQ(run_lab({"verify", "--protocol", "nonexistent"}).code, 1);
    EXPECT_EQ(run_lab({"reduce", "bogus"}).code, 1);
    EXPECT_EQ(run_lab({"transform", "amplify", "--noise-eps", "0.7", "--out", "/dev/null"}).code, 1);
}

TEST(cli, capacity_errors_exit_three) {
    const size_t old = choi_entry_cap();
    set_choi_entry_cap(64);
    EXPECT_EQ(run_lab({"verify", "--protocol", "eq", "--out", "/dev/null"}).code, 3);
    set_choi_entry_cap(old);
}

TEST(cli, negate_then_verify_from_saved_files) {
    const fs::path d = scratch("negate");
    ASSERT_EQ(run_lab({"transform", "negate", "--protocol", "eq", "--n", "1", "--save", (d / "neq").string(), "--out",
                   (d / "t.json").string()})
                  .code,
              0);
    const LabRun v = run_lab({"verify", "--protocol", (d / "neq" / "protocol.json").string(), "--out", (d / "v.json").string()});
    ASSERT_EQ(v.code, 0) << v.err;
    const Json j = Json::parse(slurp(d / "v.json"));
    EXPECT_EQ(j["result"]["predicate"], "NEQ");
}

TEST(cli, save_load_round_trip_is_bit_identical) {
    const fs::path d = scratch("roundtrip");
    const CdqsProtocol p = cdqs_equality(1);
    const std::string path = save_protocol(p, d.string());
    const auto loaded = std::get<CdqsProtocol>(load_protocol(path, 1));
    ASSERT_EQ(loaded.alice.size(), p.alice.size());
    for (std::size_t i = 0; i < p.alice.size(); ++i) EXPECT_EQ(loaded.alice[i].choi(), p.alice[i].choi());
    for (std::size_t i = 0; i < p.bob.size(); ++i) EXPECT_EQ(loaded.bob[i].choi(), p.bob[i].choi());
    EXPECT_EQ(loaded.resource.matrix, p.resource.matrix);
    EXPECT_EQ(loaded.f, p.f);
}

TEST(cli, malformed_choi_is_rejected) {
    const fs::path d = scratch("badchoi");
    save_protocol(cdqs_equality(1), d.string());
    const QuantumChannel b = load_channel((d / "bob_0.choi").string());
    ComplexMatrix j = b.choi();
    j(0, 0) -= 2.0;
    j(1, 1) += 2.0;
    std::ofstream(d / "bob_0.choi") << "CHOI " << b.d_in() << " " << b.d_out() << "\n" << write_matrix(j);
    const LabRun r = run_lab({"verify", "--protocol", (d / "protocol.json").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("bob"), std::string::npos) << r.err;
}

TEST(cli, json_errors_are_addressed) {
    const fs::path d = scratch("badjson");
    std::ofstream(d / "a.json") << "{\n  \"kind\": \"cdqs\",\n  \"n\": 1,\n  oops\n}\n";
    const LabRun r = run_lab({"verify", "--protocol", (d / "a.json").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
    std::ofstream(d / "b.json") << R"({"kind": "cdqs", "n": 1, "predicate": "EQ", "d_Q": 2})";
    const LabRun r2 = run_lab({"verify", "--protocol", (d / "b.json").string()});
    EXPECT_EQ(r2.code, 1);
    EXPECT_NE(r2.err.find("missing field"), std::string::npos) << r2.err;
}

TEST(cli, reduce_pp_reports_damping) {
    const fs::path d = scratch("pp");
    ASSERT_EQ(run_lab({"reduce", "pp", "--protocol", "eq_pp", "--n", "1", "--out", (d / "pp.json").string()}).code, 0);
    const Json j = Json::parse(slurp(d / "pp.json"));
    EXPECT_NEAR(j["result"]["s"].get<double>(), j["result"]["s0"].get<double>() / 2, 1e-15);
}

TEST(cli, list_protocols) {
    const LabRun r = run_lab({"list-protocols"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("eq_pp"), std::string::npos);
    EXPECT_NE(r.out.find("five_qubit"), std::string::npos);
}
