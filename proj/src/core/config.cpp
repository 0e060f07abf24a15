#include "core/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "core/error.hpp"

namespace mfc {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    std::ostringstream os;
    os << "line " << line << ": " << msg;
    throw ParseError(os.str());
}

double parse_double(const std::string& raw, int line, const std::string& key) {
    double out = 0.0;
    const char* begin = raw.data();
    const char* end = begin + raw.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end)
        fail(line, "key '" + key + "' expects a number, got '" + raw + "'");
    return out;
}

int parse_int(const std::string& raw, int line, const std::string& key) {
    int out = 0;
    const char* begin = raw.data();
    const char* end = begin + raw.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end)
        fail(line, "key '" + key + "' expects an integer, got '" + raw + "'");
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

class KeyTable {
public:
    KeyTable(std::map<std::string, Entry> entries, std::string dir)
        : entries_(std::move(entries)), dir_(std::move(dir)) {}

    bool has(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            return false;
        it->second.used = true;
        return true;
    }
    const Entry* get(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            return nullptr;
        it->second.used = true;
        return &it->second;
    }
    double number(const std::string& key, double fallback) {
        const Entry* e = get(key);
        return e == nullptr ? fallback : parse_double(e->value, e->line, key);
    }
    int integer(const std::string& key, int fallback) {
        const Entry* e = get(key);
        return e == nullptr ? fallback : parse_int(e->value, e->line, key);
    }
    double required_number(const std::string& key) {
        const Entry* e = get(key);
        if (e == nullptr)
            throw ParseError("missing required key '" + key + "'");
        return parse_double(e->value, e->line, key);
    }
    int required_integer(const std::string& key) {
        const Entry* e = get(key);
        if (e == nullptr)
            throw ParseError("missing required key '" + key + "'");
        return parse_int(e->value, e->line, key);
    }
    std::string text(const std::string& key, const std::string& fallback) {
        const Entry* e = get(key);
        return e == nullptr ? fallback : e->value;
    }
    std::string required_text(const std::string& key) {
        const Entry* e = get(key);
        if (e == nullptr)
            throw ParseError("missing required key '" + key + "'");
        return e->value;
    }
    std::string resolve_path(const std::string& raw) const {
        std::filesystem::path p(raw);
        if (p.is_absolute())
            return p.string();
        return (std::filesystem::path(dir_) / p).string();
    }
    void reject_unused() const {
        const Entry* worst = nullptr;
        std::string worst_key;
        for (const auto& [key, entry] : entries_) {
            if (!entry.used && (worst == nullptr || entry.line < worst->line)) {
                worst = &entry;
                worst_key = key;
            }
        }
        if (worst != nullptr)
            fail(worst->line, "unknown key '" + worst_key + "'");
    }

private:
    std::map<std::string, Entry> entries_;
    std::string dir_;
};

KeyTable read_entries(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    std::map<std::string, Entry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(lineno, "expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(lineno, "empty key");
        auto it = entries.find(key);
        if (it != entries.end()) {
            std::ostringstream os;
            os << "duplicate key '" << key << "' at lines " << it->second.line << " and "
               << lineno;
            throw ParseError(os.str());
        }
        entries[key] = Entry{value, lineno, false};
    }
    return KeyTable(std::move(entries),
                    std::filesystem::path(path).parent_path().string());
}

void require_file(const std::string& path, const std::string& key) {
    if (!std::filesystem::exists(path))
        throw IoError("key '" + key + "' references a missing file: " + path);
}

Mode parse_mode(const std::string& raw, int line) {
    if (raw == "mfg")
        return Mode::MFG;
    if (raw == "mftc")
        return Mode::MFTC;
    fail(line, "key 'run.mode' expects mfg or mftc, got '" + raw + "'");
}

void parse_init(RunConfig& cfg, const Entry& e) {
    const std::string& raw = e.value;
    cfg.init_raw = raw;
    if (raw.rfind("uniform:", 0) == 0) {
        cfg.init_kind = RunConfig::InitKind::Uniform;
        cfg.init_uniform = parse_double(raw.substr(8), e.line, "init.density");
        if (cfg.init_uniform < 0.0)
            fail(e.line, "init.density uniform value must be >= 0");
        return;
    }
    if (raw.rfind("file:", 0) == 0) {
        cfg.init_kind = RunConfig::InitKind::File;
        cfg.init_file = raw.substr(5);
        if (cfg.init_file.empty())
            fail(e.line, "init.density file path is empty");
        return;
    }
    if (raw.rfind("blocks:", 0) == 0) {
        cfg.init_kind = RunConfig::InitKind::Blocks;
        for (const std::string& part : split(raw.substr(7), ';')) {
            const auto nums = split(part, ',');
            if (nums.size() != 4)
                fail(e.line, "init.density block needs i0,j0,i1,j1, got '" + part + "'");
            RunConfig::Block b;
            b.i0 = parse_int(trim(nums[0]), e.line, "init.density");
            b.j0 = parse_int(trim(nums[1]), e.line, "init.density");
            b.i1 = parse_int(trim(nums[2]), e.line, "init.density");
            b.j1 = parse_int(trim(nums[3]), e.line, "init.density");
            cfg.init_blocks.push_back(b);
        }
        if (cfg.init_blocks.empty())
            fail(e.line, "init.density blocks list is empty");
        return;
    }
    fail(e.line, "init.density expects uniform:<v>, file:<csv>, or blocks:<rects>");
}

RunningCost parse_running_cost(const std::string& raw, int line) {
    if (raw.rfind("const:", 0) == 0)
        return RunningCost::constant(parse_double(raw.substr(6), line, "hamiltonian.F"));
    if (raw.rfind("quad:", 0) == 0) {
        const auto nums = split(raw.substr(5), ',');
        if (nums.size() != 2)
            fail(line, "hamiltonian.F quad form expects quad:<a>,<b>");
        return RunningCost::quadratic(parse_double(trim(nums[0]), line, "hamiltonian.F"),
                                      parse_double(trim(nums[1]), line, "hamiltonian.F"));
    }
    fail(line, "hamiltonian.F expects const:<v> or quad:<a>,<b>, got '" + raw + "'");
}

}  // namespace

RunConfig load_config(const std::string& path) {
    KeyTable keys = read_entries(path);
    RunConfig cfg;

    const Entry* grid_n = keys.get("grid.n");
    const Entry* geom_file = keys.get("geometry.file");
    if ((grid_n != nullptr) == (geom_file != nullptr))
        throw ParseError("exactly one of grid.n and geometry.file is required");
    if (grid_n != nullptr) {
        cfg.torus = true;
        cfg.grid_n = parse_int(grid_n->value, grid_n->line, "grid.n");
        if (cfg.grid_n < 2)
            fail(grid_n->line, "grid.n must be >= 2");
        cfg.grid_side = keys.number("grid.side", 1.0);
        if (!(cfg.grid_side > 0.0))
            throw ParseError("grid.side must be > 0");
        if (keys.has("geometry.h"))
            throw ParseError("geometry.h applies only to geometry.file domains");
    } else {
        cfg.torus = false;
        cfg.geometry_file = keys.resolve_path(geom_file->value);
        require_file(cfg.geometry_file, "geometry.file");
        cfg.geometry_h = keys.number("geometry.h", 1.0);
        if (!(cfg.geometry_h > 0.0))
            throw ParseError("geometry.h must be > 0");
        if (keys.has("grid.side"))
            throw ParseError("grid.side applies only to grid.n domains");
    }

    cfg.solver.nu = keys.required_number("solver.nu");
    cfg.solver.T = keys.required_number("solver.T");
    cfg.solver.Nt = keys.required_integer("solver.Nt");
    cfg.solver.delta = keys.number("solver.delta", 0.5);
    cfg.solver.tol = keys.number("solver.tol", 1e-5);
    cfg.solver.max_iters = keys.integer("solver.max_iters", 200);
    cfg.solver.exit_cost = keys.number("solver.exit_cost", 0.0);
    if (const Entry* mode = keys.get("run.mode"))
        cfg.solver.mode = parse_mode(mode->value, mode->line);
    cfg.solver.validate();

    const Entry* init = keys.get("init.density");
    if (init == nullptr)
        throw ParseError("missing required key 'init.density'");
    parse_init(cfg, *init);
    if (cfg.init_kind == RunConfig::InitKind::File) {
        cfg.init_file = keys.resolve_path(cfg.init_file);
        require_file(cfg.init_file, "init.density");
    }

    const Entry* family = keys.get("hamiltonian.family");
    if (family == nullptr)
        throw ParseError("missing required key 'hamiltonian.family'");
    if (family->value == "local") {
        cfg.family_local = true;
        cfg.cH = keys.required_number("hamiltonian.cH");
        cfg.alpha = keys.required_number("hamiltonian.alpha");
        cfg.beta = keys.required_number("hamiltonian.beta");
        cfg.offset = keys.required_number("hamiltonian.offset");
        if (const Entry* f = keys.get("hamiltonian.F")) {
            cfg.F = parse_running_cost(f->value, f->line);
            cfg.F_raw = f->value;
        }
        if (const Entry* k = keys.get("hamiltonian.kernel"))
            fail(k->line, "hamiltonian.kernel is only valid for the nonlocal family");
        LocalHamiltonianSpec probe{cfg.cH, cfg.alpha, cfg.beta, cfg.offset, cfg.F};
        probe.validate();
    } else if (family->value == "nonlocal") {
        cfg.family_local = false;
        cfg.alpha = keys.required_number("hamiltonian.alpha");
        cfg.beta = keys.required_number("hamiltonian.beta");
        cfg.offset = keys.required_number("hamiltonian.offset");
        cfg.kernel_file = keys.resolve_path(keys.required_text("hamiltonian.kernel"));
        require_file(cfg.kernel_file, "hamiltonian.kernel");
        if (const Entry* c = keys.get("hamiltonian.cH"))
            fail(c->line, "hamiltonian.cH is only valid for the local family");
        if (const Entry* f = keys.get("hamiltonian.F"))
            fail(f->line, "hamiltonian.F is only valid for the local family");
    } else {
        fail(family->line, "hamiltonian.family expects local or nonlocal, got '" +
                               family->value + "'");
    }

    cfg.output_dir = keys.text("output.dir", "out");
    if (const Entry* snaps = keys.get("output.snapshots")) {
        for (const std::string& part : split(snaps->value, ',')) {
            const double t = parse_double(trim(part), snaps->line, "output.snapshots");
            if (t < 0.0 || t > cfg.solver.T)
                fail(snaps->line, "snapshot times must lie in [0, T]");
            cfg.snapshot_times.push_back(t);
        }
    }

    cfg.uniq_m_min = keys.number("uniqueness.m_min", cfg.uniq_m_min);
    cfg.uniq_m_max = keys.number("uniqueness.m_max", cfg.uniq_m_max);
    cfg.uniq_m_count = keys.integer("uniqueness.m_count", cfg.uniq_m_count);
    cfg.uniq_v_min = keys.number("uniqueness.v_min", cfg.uniq_v_min);
    cfg.uniq_v_max = keys.number("uniqueness.v_max", cfg.uniq_v_max);
    cfg.uniq_v_count = keys.integer("uniqueness.v_count", cfg.uniq_v_count);
    cfg.uniq_angle_count = keys.integer("uniqueness.angle_count", cfg.uniq_angle_count);
    cfg.uniq_m0_max = keys.number("uniqueness.m0_max", cfg.uniq_m0_max);
    if (!(cfg.uniq_m_min > 0.0) || cfg.uniq_m_max < cfg.uniq_m_min ||
        cfg.uniq_m_count < 1 || cfg.uniq_v_count < 1 || cfg.uniq_angle_count < 1 ||
        !(cfg.uniq_v_min >= 0.0) || cfg.uniq_v_max < cfg.uniq_v_min ||
        !(cfg.uniq_m0_max > 0.0))
        throw ParseError("uniqueness sampling box is malformed");

    keys.reject_unused();
    return cfg;
}

void config_set(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "run.mode") {
        if (value == "mfg")
            config.solver.mode = Mode::MFG;
        else if (value == "mftc")
            config.solver.mode = Mode::MFTC;
        else
            throw InvalidArgument("run.mode expects mfg or mftc, got '" + value + "'");
        return;
    }
    if (key == "output.dir") {
        if (value.empty())
            throw InvalidArgument("output.dir must not be empty");
        config.output_dir = value;
        return;
    }
    throw InvalidArgument("key '" + key + "' cannot be overridden after loading");
}

}  // namespace mfc
