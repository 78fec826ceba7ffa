#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "tcount/coset.hpp"

namespace tcount {

/// Exit codes shared by all subcommands: 0 = decided (T-count <= m) or plain
/// success, 2 = "T-count greater than m", 1 = any error. Shell scripts can
/// binary-search m on the 0/2 distinction.
inline constexpr int kExitDecided = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitExceeded = 2;

enum class OutputMode { Text, Machine };

struct RunConfig {
    unsigned qubits = 0;       // 0 = infer from input
    std::uint32_t max_m = 6;
    std::string db_dir;
    DbFormat format = DbFormat::Sparse;
    unsigned threads = 1;
    OutputMode output = OutputMode::Text;
    bool allow_large_n = false;  // default guard is n in [1, 3]
    bool certificate = false;
    std::string input_path;
    std::string output_path;  // cmd_synth circuit destination ("" = stdout)
    std::uint32_t max_k = 0;  // cmd_gen_db stratum limit
};

/// Environment variable consulted for a default --db directory.
inline constexpr const char* kDbDirEnv = "TCOUNT_DB_DIR";

int cmd_gen_db(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sde(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, const std::string& circuit_path, std::ostream& out,
               std::ostream& err);

/// Loads every stratum listed in the manifest of `db_dir` (validating n).
DatabaseSet load_database_dir(const std::string& db_dir, unsigned n);

}  // namespace tcount
