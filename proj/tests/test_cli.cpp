#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "support.hpp"
#include "tcount/cli.hpp"
#include "tcount/formats.hpp"
#include "tcount/tcount.hpp"

using namespace tcount;
using namespace tcount::testing;

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string write_input(const TempDir& dir, const char* name, const std::string& text) {
    fs::path p = dir.path / name;
    write_text_file(p.string(), text);
    return p.string();
}

RunConfig base_config(const TempDir& db) {
    RunConfig cfg;
    cfg.db_dir = (db.path / "dbs").string();
    cfg.threads = 2;
    return cfg;
}

int run_gen(RunConfig cfg, unsigned n, std::uint32_t k) {
    cfg.qubits = n;
    cfg.max_k = k;
    std::ostringstream out, err;
    return cmd_gen_db(cfg, out, err);
}

}  // namespace

TEST_CASE("gen-db writes files, a manifest, and is a no-op when rerun") {
    TempDir dir("tcount_cli_gen");
    RunConfig cfg = base_config(dir);
    CHECK(run_gen(cfg, 2, 3) == kExitDecided);
    for (int k = 0; k <= 3; ++k)
        CHECK(fs::exists(fs::path(cfg.db_dir) / ("n2_k" + std::to_string(k) + ".tcdb")));
    CHECK(fs::exists(fs::path(cfg.db_dir) / "manifest.json"));

    // rerun with k = 0 over the superset manifest: no-op success
    CHECK(run_gen(cfg, 2, 0) == kExitDecided);

    // incompatible rerun (different n) errors
    CHECK_THROWS(run_gen(cfg, 1, 0));

    DatabaseSet dbs = load_database_dir(cfg.db_dir, 2);
    CHECK(dbs.max_k() == 3);
    CHECK(dbs.stratum(1).size() == 15);
    CHECK(dbs.stratum(2).size() == 165);
    CHECK(dbs.stratum(3).size() == 1695);
    CHECK_THROWS(load_database_dir(cfg.db_dir, 3));
}

TEST_CASE("gen-db with K = 0 holds a single identity record") {
    TempDir dir("tcount_cli_gen0");
    RunConfig cfg = base_config(dir);
    CHECK(run_gen(cfg, 1, 0) == kExitDecided);
    DatabaseSet dbs = load_database_dir(cfg.db_dir, 1);
    CHECK(dbs.max_k() == 0);
    REQUIRE(dbs.stratum(0).size() == 1);
    CHECK(dbs.stratum(0).record(0).unitary == ChannelRep::identity(1));
    CHECK(dbs.stratum(0).record(0).rotations.empty());
}

TEST_CASE("count on circuits: verdicts, exit codes and certificates") {
    TempDir dir("tcount_cli_count");
    RunConfig cfg = base_config(dir);
    REQUIRE(run_gen(cfg, 1, 2) == kExitDecided);

    cfg.input_path = write_input(dir, "t.circuit", "T 1\n");
    cfg.max_m = 1;
    std::ostringstream out, err;
    CHECK(cmd_count(cfg, out, err) == kExitDecided);
    CHECK(out.str() == "T-count = 1\n");

    // machine-readable with certificate
    cfg.output = OutputMode::Machine;
    cfg.certificate = true;
    std::ostringstream mout, merr;
    CHECK(cmd_count(cfg, mout, merr) == kExitDecided);
    CHECK(mout.str().find("result=decided\ntcount=1\n") == 0);
    CHECK(mout.str().find("witness.v=Z\n") != std::string::npos);

    // exceeding bound returns exit code 2
    cfg.output = OutputMode::Text;
    cfg.certificate = false;
    cfg.input_path = write_input(dir, "deep.circuit", "T 1\nH 1\nT 1\nH 1\nT 1\nH 1\nT 1\nH 1\nT 1\n");
    cfg.max_m = 4;
    std::ostringstream out2, err2;
    CHECK(cmd_count(cfg, out2, err2) == kExitExceeded);
    CHECK(out2.str() == "T-count > 4\n");
}

TEST_CASE("count on matrix inputs goes through the membership check") {
    TempDir dir("tcount_cli_matrix");
    RunConfig cfg = base_config(dir);
    REQUIRE(run_gen(cfg, 2, 2) == kExitDecided);

    // CNOT as an exact matrix: T-count 0
    cfg.input_path = write_input(dir, "cnot.matrix", print_matrix(gate_matrix(GateKind::Cnot)));
    cfg.max_m = 2;
    std::ostringstream out, err;
    CHECK(cmd_count(cfg, out, err) == kExitDecided);
    CHECK(out.str() == "T-count = 0\n");
    CHECK(err.str().find("membership") != std::string::npos);

    // diag(1,1,1,omega) fails the determinant condition
    UnitaryMatrix bad(2);
    bad.at(0, 0) = CycloElem::one();
    bad.at(1, 1) = CycloElem::one();
    bad.at(2, 2) = CycloElem::one();
    bad.at(3, 3) = CycloElem::omega_power(1);
    cfg.input_path = write_input(dir, "bad.matrix", print_matrix(bad));
    std::ostringstream out2, err2;
    CHECK_THROWS_WITH_AS(cmd_count(cfg, out2, err2), doctest::Contains("not a Clifford+T"),
                         std::invalid_argument);
}

TEST_CASE("count reports missing strata by name") {
    TempDir dir("tcount_cli_missing");
    RunConfig cfg = base_config(dir);
    REQUIRE(run_gen(cfg, 1, 1) == kExitDecided);
    cfg.input_path = write_input(dir, "t.circuit", "T 1\n");
    cfg.max_m = 6;
    std::ostringstream out, err;
    CHECK_THROWS_WITH_AS(cmd_count(cfg, out, err), doctest::Contains("stratum 3"),
                         std::invalid_argument);
}

TEST_CASE("synth writes a T-optimal circuit file") {
    TempDir dir("tcount_cli_synth");
    RunConfig cfg = base_config(dir);
    REQUIRE(run_gen(cfg, 2, 2) == kExitDecided);

    std::string input_text = "T 1\nCNOT 1 2\nS 2\nH 1\nTdg 2\n";
    cfg.input_path = write_input(dir, "in.circuit", input_text);
    cfg.max_m = 4;
    cfg.output_path = (dir.path / "out.circuit").string();
    std::ostringstream out, err;
    CHECK(cmd_synth(cfg, out, err) == kExitDecided);

    Circuit synthesized = parse_circuit(read_text_file(cfg.output_path), 2);
    Circuit original = parse_circuit(input_text, 2);
    CHECK(ChannelRep::from_circuit(synthesized) == ChannelRep::from_circuit(original));
    CHECK(out.str().find("T-count = 2") != std::string::npos);

    // T-count above the bound: exit 2 with a pointed message
    std::string deep_text = "T 1\nH 1\nT 1\nH 1\nT 1\nH 1\nT 1\nH 1\nT 1\nCNOT 1 2\n";
    REQUIRE_FALSE(count_t_naive(ChannelRep::from_circuit(parse_circuit(deep_text, 2)), 4).decided());
    cfg.input_path = write_input(dir, "deep.circuit", deep_text);
    cfg.max_m = 4;
    std::ostringstream out2, err2;
    CHECK(cmd_synth(cfg, out2, err2) == kExitExceeded);
    CHECK(err2.str().find("max-m") != std::string::npos);
}

TEST_CASE("sde command applies to single-qubit inputs only") {
    TempDir dir("tcount_cli_sde");
    RunConfig cfg = base_config(dir);
    cfg.input_path = write_input(dir, "id.circuit", "# empty\n");
    cfg.qubits = 1;
    std::ostringstream out, err;
    CHECK(cmd_sde(cfg, out, err) == kExitDecided);
    CHECK(out.str() == "sde = 0 (T-count = 0)\n");

    cfg.input_path = write_input(dir, "t.circuit", "T 1\n");
    std::ostringstream out2, err2;
    CHECK(cmd_sde(cfg, out2, err2) == kExitDecided);
    CHECK(out2.str() == "sde = 1 (T-count = 1)\n");

    cfg.qubits = 0;
    cfg.input_path = write_input(dir, "two.circuit", "CNOT 1 2\n");
    std::ostringstream out3, err3;
    CHECK_THROWS_AS(cmd_sde(cfg, out3, err3), std::invalid_argument);
}

TEST_CASE("verify accepts exact equality and pinpoints mismatches") {
    TempDir dir("tcount_cli_verify");
    RunConfig cfg = base_config(dir);

    std::string toff = read_text_file(std::string(TCOUNT_TEST_DATA_DIR) + "/toffoli7.circuit");
    std::string circuit_path = write_input(dir, "toffoli7.circuit", toff);
    cfg.input_path = write_input(dir, "toffoli.matrix", print_matrix(toffoli_matrix()));
    std::ostringstream out, err;
    CHECK(cmd_verify(cfg, circuit_path, out, err) == kExitDecided);
    CHECK(out.str().find("7 T gates") != std::string::npos);

    // empty circuit vs identity matrix
    std::string empty_path = write_input(dir, "empty.circuit", "# nothing\n");
    cfg.input_path = write_input(dir, "id.matrix", print_matrix(UnitaryMatrix::identity(2)));
    std::ostringstream out2, err2;
    CHECK(cmd_verify(cfg, empty_path, out2, err2) == kExitDecided);

    // T vs S mismatch names the first differing row/column pair
    std::string t_path = write_input(dir, "t.circuit", "T 1\n");
    cfg.input_path = write_input(dir, "s.circuit", "S 1\n");
    std::ostringstream out3, err3;
    CHECK(cmd_verify(cfg, t_path, out3, err3) == kExitError);
    CHECK(out3.str().find("mismatch at row") != std::string::npos);
    CHECK(out3.str().find("X") != std::string::npos);
}

TEST_CASE("the qubit guard rejects large n unless overridden") {
    TempDir dir("tcount_cli_guard");
    RunConfig cfg = base_config(dir);
    cfg.input_path = write_input(dir, "four.circuit", "H 4\n");
    std::ostringstream out, err;
    CHECK_THROWS_WITH_AS(cmd_sde(cfg, out, err), doctest::Contains("allow-large-n"),
                         std::invalid_argument);
}
