#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "tcount/cli.hpp"
#include "tcount/coset.hpp"

using namespace tcount;

namespace {

std::string default_db_dir() {
    const char* env = std::getenv(kDbDirEnv);
    return env ? std::string(env) : std::string();
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("-n,--qubits", cfg.qubits, "Qubit count (inferred from input when omitted)");
    cmd->add_option("-j,--threads", cfg.threads, "Worker threads")->default_val(1);
    cmd->add_flag("--allow-large-n", cfg.allow_large_n, "Lift the n <= 3 guard");
    cmd->add_option_function<std::string>(
           "--output",
           [&cfg](const std::string& v) {
               cfg.output = v == "machine" ? OutputMode::Machine : OutputMode::Text;
           },
           "Output format: text | machine")
        ->check(CLI::IsMember({"text", "machine"}));
}

void add_db_option(CLI::App* cmd, RunConfig& cfg) {
    cfg.db_dir = default_db_dir();
    auto* opt = cmd->add_option("-d,--db", cfg.db_dir, "Database directory");
    if (cfg.db_dir.empty()) opt->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact T-count decision, optimization and synthesis for Clifford+T circuits"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format_name = "sparse";
    std::string circuit_path;

    CLI::App* gen = app.add_subcommand("gen-db", "Precompute sorted coset databases D_0..D_K");
    add_common(gen, cfg);
    add_db_option(gen, cfg);
    gen->add_option("-k,--max-k", cfg.max_k, "Highest T-count stratum to generate")->required();
    gen->add_option("--format", format_name, "Record storage: dense | sparse | compact")
        ->check(CLI::IsMember({"dense", "sparse", "compact"}));

    CLI::App* count = app.add_subcommand("count", "Decide whether the T-count is <= m");
    add_common(count, cfg);
    add_db_option(count, cfg);
    count->add_option("-m,--max-m", cfg.max_m, "Decision bound m")->required();
    count->add_flag("--certificate", cfg.certificate, "Print the witness rotation sequences");
    count->add_option("input", cfg.input_path, "Circuit or matrix file")->required();

    CLI::App* synth = app.add_subcommand("synth", "Write a T-optimal circuit for the input");
    add_common(synth, cfg);
    add_db_option(synth, cfg);
    synth->add_option("-m,--max-m", cfg.max_m, "Bound on the T-count")->required();
    synth->add_option("-o,--out", cfg.output_path, "Circuit file to write (stdout when omitted)");
    synth->add_option("input", cfg.input_path, "Circuit or matrix file")->required();

    CLI::App* sde = app.add_subcommand("sde", "Single-qubit T-count via the denominator exponent");
    add_common(sde, cfg);
    sde->add_option("input", cfg.input_path, "Circuit or matrix file")->required();

    CLI::App* verify = app.add_subcommand("verify", "Check a circuit against a reference input");
    add_common(verify, cfg);
    verify->add_option("circuit", circuit_path, "Circuit file to verify")->required();
    verify->add_option("input", cfg.input_path, "Reference circuit or matrix file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            cfg.format = *db_format_from_name(format_name);
            return cmd_gen_db(cfg, std::cout, std::cerr);
        }
        if (count->parsed()) return cmd_count(cfg, std::cout, std::cerr);
        if (synth->parsed()) return cmd_synth(cfg, std::cout, std::cerr);
        if (sde->parsed()) return cmd_sde(cfg, std::cout, std::cerr);
        if (verify->parsed()) return cmd_verify(cfg, circuit_path, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
