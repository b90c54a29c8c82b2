#include <quantasp/solver.hpp>

#include <quantasp/formats.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace quantasp {

std::string to_string(SolveResult r) {
    switch (r) {
        case SolveResult::Sat: return "SAT";
        case SolveResult::Unsat: return "UNSAT";
        case SolveResult::Unknown: break;
    }
    return "UNKNOWN";
}


void SolverSpec::validate() const {
    if (name.empty()) {
        throw SolverError("solver without a name");
    }
    std::size_t count = 0;
    for (auto p = command.find("{input}"); p != std::string::npos; p = command.find("{input}", p + 1)) {
        ++count;
    }
    if (count != 1) {
        throw SolverError(name + ": command must contain {input} exactly once");
    }
    for (int c : sat_exit) {
        if (std::find(unsat_exit.begin(), unsat_exit.end(), c) != unsat_exit.end()) {
            throw SolverError(name + ": exit code " + std::to_string(c) + " is both SAT and UNSAT");
        }
    }
    if (!(timeout_s > 0)) {
        throw SolverError(name + ": timeout must be positive");
    }
}

std::vector<SolverSpec> parse_solver_config(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw SolverError(std::string("solver config: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("solvers") || !doc["solvers"].is_array()) {
        throw SolverError("solver config: expected an object with a \"solvers\" array");
    }
    std::vector<SolverSpec> out;
    try {
        for (const auto& j : doc["solvers"]) {
            SolverSpec s;
            s.name    = j.at("name").get<std::string>();
            s.command = j.at("command").get<std::string>();
            if (j.contains("format")) {
                try {
                    s.format = parse_format(j["format"].get<std::string>());
                } catch (const FormatError& e) {
                    throw SolverError(std::string("solver config: ") + e.what());
                }
            }
            if (j.contains("sat_exit")) {
                s.sat_exit = j["sat_exit"].get<std::vector<int>>();
            }
            if (j.contains("unsat_exit")) {
                s.unsat_exit = j["unsat_exit"].get<std::vector<int>>();
            }
            if (j.contains("timeout_s")) {
                s.timeout_s = j["timeout_s"].get<double>();
            }
            s.validate();
            out.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SolverError(std::string("solver config: ") + e.what());
    }
    return out;
}

std::vector<SolverSpec> load_solver_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw SolverError("cannot read solver config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_solver_config(ss.str());
}

std::optional<std::filesystem::path> solver_config_path(const std::optional<std::filesystem::path>& fallback) {
    if (const char* env = std::getenv("QUANTASP_SOLVERS"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    return fallback;
}

SolverInput::SolverInput(QbfCircuit circuit) : circuit_(std::move(circuit)) {}
SolverInput::SolverInput(PrenexCnf cnf) : cnf_(std::move(cnf)) {}

const std::string& SolverInput::text(QbfFormat f) const {
    if (f == QbfFormat::Qcir) {
        if (!qcir_) {
            qcir_ = emit_qcir(circuit_ ? *circuit_ : to_circuit(*cnf_));
        }
        return *qcir_;
    }
    if (!qdimacs_) {
        qdimacs_ = emit_qdimacs(cnf_ ? *cnf_ : prenex_cnf(*circuit_));
    }
    return *qdimacs_;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

class TempFile {
public:
    TempFile(const std::string& suffix, const std::string& content) {
        auto pattern = (std::filesystem::temp_directory_path() / ("quantasp-XXXXXX" + suffix)).string();
        int  fd      = mkstemps(pattern.data(), static_cast<int>(suffix.size()));
        if (fd < 0) {
            throw SolverError("cannot create temporary file");
        }
        path_ = pattern;
        std::size_t done = 0;
        while (done < content.size()) {
            auto n = ::write(fd, content.data() + done, content.size() - done);
            if (n <= 0) {
                ::close(fd);
                throw SolverError("cannot write " + path_);
            }
            done += static_cast<std::size_t>(n);
        }
        ::close(fd);
    }
    TempFile(const TempFile&)            = delete;
    TempFile& operator=(const TempFile&) = delete;
    ~TempFile() { ::unlink(path_.c_str()); }

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct Child {
    const SolverSpec* spec = nullptr;
    pid_t             pid  = -1;
    Clock::time_point start;
    bool              done = false;
    SolveOutcome      outcome;
};

pid_t spawn(const std::string& command) {
    pid_t pid = fork();
    if (pid == 0) {
        setpgid(0, 0);
        int devnull = open("/dev/null", O_RDWR);
        if (devnull >= 0) {
            dup2(devnull, STDIN_FILENO);
            dup2(devnull, STDOUT_FILENO);
            dup2(devnull, STDERR_FILENO);
        }
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    if (pid > 0) {
        setpgid(pid, pid);
    }
    return pid;
}

void kill_group(pid_t pid) {
    if (::kill(-pid, SIGKILL) != 0) {
        ::kill(pid, SIGKILL);
    }
    int st = 0;
    waitpid(pid, &st, 0);
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

SolveOutcome classify(const SolverSpec& spec, int status) {
    SolveOutcome o;
    o.backend = spec.name;
    if (WIFEXITED(status)) {
        int code = WEXITSTATUS(status);
        if (std::find(spec.sat_exit.begin(), spec.sat_exit.end(), code) != spec.sat_exit.end()) {
            o.result = SolveResult::Sat;
        } else if (std::find(spec.unsat_exit.begin(), spec.unsat_exit.end(), code) != spec.unsat_exit.end()) {
            o.result = SolveResult::Unsat;
        } else {
            o.diagnostic = "unmapped exit code " + std::to_string(code);
        }
    } else if (WIFSIGNALED(status)) {
        o.diagnostic = "killed by signal " + std::to_string(WTERMSIG(status));
    }
    return o;
}

SolveOutcome run_all(const std::vector<SolverSpec>& specs, const SolverInput& input) {
    if (specs.empty()) {
        throw SolverError("no solvers configured");
    }
    for (const auto& s : specs) {
        s.validate();
    }
    std::optional<TempFile> qcir;
    std::optional<TempFile> qdimacs;
    for (const auto& s : specs) {
        auto& slot = s.format == QbfFormat::Qcir ? qcir : qdimacs;
        if (!slot) {
            slot.emplace(s.format == QbfFormat::Qcir ? ".qcir" : ".qdimacs", input.text(s.format));
        }
    }

    auto                 started = Clock::now();
    std::vector<Child>   children;
    for (const auto& s : specs) {
        const auto& file = s.format == QbfFormat::Qcir ? qcir->path() : qdimacs->path();
        auto        cmd  = s.command;
        cmd.replace(cmd.find("{input}"), 7, shell_quote(file));
        Child c;
        c.spec  = &s;
        c.start = Clock::now();
        c.pid   = spawn(cmd);
        if (c.pid < 0) {
            c.done               = true;
            c.outcome.backend    = s.name;
            c.outcome.diagnostic = "spawn failed";
        }
        children.push_back(std::move(c));
    }

    std::optional<SolveOutcome> winner;
    while (true) {
        bool running = false;
        for (auto& c : children) {
            if (c.done) {
                continue;
            }
            int   st = 0;
            pid_t r  = waitpid(c.pid, &st, WNOHANG);
            if (r == c.pid) {
                c.done              = true;
                c.outcome           = classify(*c.spec, st);
                c.outcome.wall_time = seconds_since(c.start);
                // the shell may have left children in the group
                ::kill(-c.pid, SIGKILL);
                if (c.outcome.result != SolveResult::Unknown) {
                    if (winner && winner->result != c.outcome.result) {
                        for (auto& other : children) {
                            if (!other.done) {
                                kill_group(other.pid);
                                other.done = true;
                            }
                        }
                        throw SolverError("solvers disagree: " + winner->backend + " says " +
                                          to_string(winner->result) + ", " + c.outcome.backend + " says " +
                                          to_string(c.outcome.result));
                    }
                    if (!winner) {
                        winner = c.outcome;
                    }
                }
            } else if (seconds_since(c.start) >= c.spec->timeout_s) {
                kill_group(c.pid);
                c.done                = true;
                c.outcome.backend     = c.spec->name;
                c.outcome.wall_time   = seconds_since(c.start);
                std::ostringstream ss;
                ss << "timeout after " << c.spec->timeout_s << "s";
                c.outcome.diagnostic = ss.str();
            } else {
                running = true;
            }
        }
        if (winner || !running) {
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    for (auto& c : children) {
        if (!c.done) {
            kill_group(c.pid);
            c.done = true;
        }
    }
    if (winner) {
        winner->wall_time = seconds_since(started);
        return *winner;
    }
    SolveOutcome out;
    out.wall_time = seconds_since(started);
    for (const auto& c : children) {
        if (!out.diagnostic.empty()) {
            out.diagnostic += "; ";
        }
        out.diagnostic += c.spec->name + ": " + c.outcome.diagnostic;
    }
    out.backend = specs.size() == 1 ? specs[0].name : "portfolio";
    return out;
}

} // namespace

SolveOutcome run_external(const SolverSpec& spec, const SolverInput& input) { return run_all({spec}, input); }

SolveOutcome run_portfolio(const std::vector<SolverSpec>& specs, const SolverInput& input) {
    return run_all(specs, input);
}

} // namespace quantasp
