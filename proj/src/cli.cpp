#include "tcount/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tcount/formats.hpp"
#include "tcount/synth.hpp"
#include "tcount/tcount.hpp"

namespace tcount {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string stratum_filename(unsigned n, std::uint32_t k) {
    return "n" + std::to_string(n) + "_k" + std::to_string(k) + ".tcdb";
}

fs::path manifest_path(const std::string& db_dir) { return fs::path(db_dir) / "manifest.json"; }

std::optional<json> read_manifest(const std::string& db_dir) {
    std::ifstream f(manifest_path(db_dir));
    if (!f) return std::nullopt;
    json m;
    try {
        f >> m;
    } catch (const json::exception& e) {
        throw std::runtime_error("corrupt manifest: " + std::string(e.what()));
    }
    return m;
}

void check_qubit_guard(const RunConfig& cfg, unsigned n) {
    if (n < 1) throw std::invalid_argument("qubit count must be at least 1");
    if (n > 3 && !cfg.allow_large_n)
        throw std::invalid_argument(
            "n = " + std::to_string(n) +
            " exceeds the supported range [1,3]; pass --allow-large-n to override");
    if (n > Pauli::kMaxQubits) throw std::invalid_argument("qubit count exceeds hard limit");
}

struct LoadedInput {
    ChannelRep channel;
    unsigned qubits;
    std::optional<Circuit> circuit;  // present for circuit inputs
};

/// Parses a circuit or matrix file into a channel representation. Matrix
/// inputs are gated through the membership check.
LoadedInput load_input(const RunConfig& cfg, std::ostream& err) {
    std::string text = read_text_file(cfg.input_path);
    if (detect_input_kind(text) == InputKind::MatrixText) {
        UnitaryMatrix u = parse_matrix(text);
        check_qubit_guard(cfg, u.qubits());
        if (cfg.qubits != 0 && cfg.qubits != u.qubits())
            throw std::invalid_argument("matrix is on " + std::to_string(u.qubits()) +
                                        " qubits but --qubits=" + std::to_string(cfg.qubits));
        MembershipReport rep = check_membership(u);
        if (!rep.member)
            throw std::invalid_argument("input is not a Clifford+T unitary: " + rep.detail);
        err << "membership: " << rep.detail << "\n";
        return {ChannelRep::from_matrix(u), u.qubits(), std::nullopt};
    }
    std::optional<unsigned> qubits =
        cfg.qubits != 0 ? std::optional<unsigned>(cfg.qubits) : std::nullopt;
    Circuit c = parse_circuit(text, qubits);
    check_qubit_guard(cfg, c.qubits);
    return {ChannelRep::from_circuit(c), c.qubits, c};
}

std::string pauli_sequence_names(unsigned n, const std::vector<std::uint32_t>& rotations) {
    std::string s;
    for (std::size_t i = 0; i < rotations.size(); ++i) {
        if (i) s += ' ';
        s += Pauli::from_index(n, rotations[i]).name();
    }
    return s;
}

void print_witness(const RunConfig& cfg, const TCountWitness& w, unsigned n, std::ostream& out) {
    if (cfg.output == OutputMode::Machine) {
        out << "witness.w=" << pauli_sequence_names(n, w.rotations_w) << "\n";
        out << "witness.v=" << pauli_sequence_names(n, w.rotations_v) << "\n";
    } else {
        out << "certificate rotations (rightmost factor first):\n";
        out << "  W side: " << pauli_sequence_names(n, w.rotations_w) << "\n";
        out << "  V side: " << pauli_sequence_names(n, w.rotations_v) << "\n";
    }
}

}  // namespace

DatabaseSet load_database_dir(const std::string& db_dir, unsigned n) {
    auto manifest = read_manifest(db_dir);
    if (!manifest)
        throw std::runtime_error("no database manifest in '" + db_dir +
                                 "'; run gen-db first (or set " + std::string(kDbDirEnv) + ")");
    if ((*manifest)["n"].get<unsigned>() != n)
        throw std::runtime_error("databases in '" + db_dir + "' are for n=" +
                                 std::to_string((*manifest)["n"].get<unsigned>()) +
                                 ", input needs n=" + std::to_string(n));
    std::uint32_t max_k = (*manifest)["max_k"].get<std::uint32_t>();
    std::vector<CosetDatabase> strata;
    for (std::uint32_t k = 0; k <= max_k; ++k) {
        CosetDatabase db = db_read(fs::path(db_dir) / stratum_filename(n, k));
        if (db.qubits() != n || db.stratum() != k)
            throw std::runtime_error("stratum file mismatch for k=" + std::to_string(k));
        strata.push_back(std::move(db));
    }
    return DatabaseSet(n, std::move(strata));
}

int cmd_gen_db(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    unsigned n = cfg.qubits == 0 ? 1 : cfg.qubits;
    check_qubit_guard(cfg, n);
    if (cfg.db_dir.empty()) throw std::invalid_argument("gen-db needs --db <dir>");

    if (auto manifest = read_manifest(cfg.db_dir)) {
        unsigned mn = (*manifest)["n"].get<unsigned>();
        std::uint32_t mk = (*manifest)["max_k"].get<std::uint32_t>();
        std::string mformat = (*manifest)["format"].get<std::string>();
        if (mn == n && mk >= cfg.max_k && mformat == db_format_name(cfg.format)) {
            out << "databases already present (n=" << mn << ", strata 0.." << mk << ", "
                << mformat << "); nothing to do\n";
            return kExitDecided;
        }
        throw std::runtime_error("db directory holds an incompatible manifest (n=" +
                                 std::to_string(mn) + ", max_k=" + std::to_string(mk) +
                                 ", format=" + mformat + "); refusing to overwrite");
    }

    fs::create_directories(cfg.db_dir);
    GenerationConfig gen;
    gen.threads = cfg.threads;
    gen.progress = [&](std::uint32_t k, std::size_t count) {
        err << "stratum " << k << ": " << count << " cosets\n";
    };
    DatabaseSet dbs = generate_databases(n, cfg.max_k, gen);

    json strata_meta = json::array();
    for (std::uint32_t k = 0; k <= cfg.max_k; ++k) {
        fs::path file = fs::path(cfg.db_dir) / stratum_filename(n, k);
        db_write(dbs.stratum(k), file, cfg.format);
        std::uint64_t bytes = fs::file_size(file);
        strata_meta.push_back({{"k", k},
                               {"file", stratum_filename(n, k)},
                               {"records", dbs.stratum(k).size()},
                               {"bytes", bytes}});
        if (cfg.output == OutputMode::Machine)
            out << "stratum." << k << ".records=" << dbs.stratum(k).size() << "\n"
                << "stratum." << k << ".bytes=" << bytes << "\n";
        else
            out << "D_" << k << ": " << dbs.stratum(k).size() << " records, " << bytes
                << " bytes\n";
        // The manifest is rewritten after every stratum so a failure (e.g.
        // disk full) leaves a consistent partial-progress record.
        json manifest = {{"n", n},
                         {"max_k", k},
                         {"format", db_format_name(cfg.format)},
                         {"strata", strata_meta}};
        std::ofstream mf(manifest_path(cfg.db_dir), std::ios::trunc);
        mf << manifest.dump(2) << "\n";
        if (!mf) throw std::runtime_error("failed to write manifest");
    }
    return kExitDecided;
}

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LoadedInput input = load_input(cfg, err);
    DatabaseSet dbs = load_database_dir(cfg.db_dir, input.qubits);
    TCountResult res = count_t(input.channel, cfg.max_m, dbs, cfg.threads);
    if (res.decided()) {
        if (cfg.output == OutputMode::Machine)
            out << "result=decided\ntcount=" << *res.tcount << "\n";
        else
            out << "T-count = " << *res.tcount << "\n";
        if (cfg.certificate && res.witness) print_witness(cfg, *res.witness, input.qubits, out);
        return kExitDecided;
    }
    if (cfg.output == OutputMode::Machine)
        out << "result=exceeded\nmax_m=" << cfg.max_m << "\n";
    else
        out << "T-count > " << cfg.max_m << "\n";
    return kExitExceeded;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LoadedInput input = load_input(cfg, err);
    DatabaseSet dbs = load_database_dir(cfg.db_dir, input.qubits);
    TCountResult res = count_t(input.channel, cfg.max_m, dbs, cfg.threads);
    if (!res.decided()) {
        err << "T-count exceeds --max-m (" << cfg.max_m << ")\n";
        return kExitExceeded;
    }
    Circuit circuit = extract_optimal_circuit(input.channel, dbs, cfg.max_m, cfg.threads);
    std::string text = print_circuit(circuit);
    if (cfg.output_path.empty())
        out << text;
    else
        write_text_file(cfg.output_path, text);
    if (cfg.output == OutputMode::Machine)
        out << "tcount=" << circuit.t_gate_count() << "\ngates=" << circuit.gates.size() << "\n";
    else
        out << "T-count = " << circuit.t_gate_count() << ", total gates = "
            << circuit.gates.size() << "\n";
    return kExitDecided;
}

int cmd_sde(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LoadedInput input = load_input(cfg, err);
    if (input.qubits != 1)
        throw std::invalid_argument("sde applies to single-qubit inputs only (got n=" +
                                    std::to_string(input.qubits) + ")");
    std::uint32_t s = tcount_single_qubit(input.channel);
    if (cfg.output == OutputMode::Machine)
        out << "sde=" << s << "\ntcount=" << s << "\n";
    else
        out << "sde = " << s << " (T-count = " << s << ")\n";
    return kExitDecided;
}

int cmd_verify(const RunConfig& cfg, const std::string& circuit_path, std::ostream& out,
               std::ostream& err) {
    std::string circuit_text = read_text_file(circuit_path);
    if (detect_input_kind(circuit_text) != InputKind::CircuitText)
        throw std::invalid_argument("first argument must be a circuit file");
    LoadedInput reference = load_input(cfg, err);
    Circuit circuit = parse_circuit(circuit_text, reference.qubits);
    ChannelRep actual = ChannelRep::from_circuit(circuit);
    if (actual == reference.channel) {
        if (cfg.output == OutputMode::Machine)
            out << "result=equal\ntgates=" << circuit.t_gate_count() << "\n";
        else
            out << "circuits match; " << circuit.t_gate_count() << " T gates\n";
        return kExitDecided;
    }
    // Report the first differing entry in row-major order by Pauli names.
    for (std::uint32_t r = 0; r < actual.dim(); ++r) {
        for (std::uint32_t c = 0; c < actual.dim(); ++c) {
            RingReal a = actual.entry(r, c);
            RingReal b = reference.channel.entry(r, c);
            if (a != b) {
                unsigned n = reference.qubits;
                out << "mismatch at row " << Pauli::from_index(n, r).name() << ", column "
                    << Pauli::from_index(n, c).name() << ": " << a.to_string() << " vs "
                    << b.to_string() << "\n";
                return kExitError;
            }
        }
    }
    out << "mismatch\n";  // unreachable if == is consistent with entries
    return kExitError;
}

}  // namespace tcount
