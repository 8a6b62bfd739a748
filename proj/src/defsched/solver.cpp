#include "defsched/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include <json.hpp>

namespace defsched {

using nlohmann::json;

namespace {

// Worker program: one JSON request per line on stdin, one JSON reply per line
// on stdout. Kept as a single self-contained source so the binary needs no
// files installed next to it.
constexpr const char* kBridgeSource = R"PYBRIDGE(
import json
import sys

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

INF_SENTINEL = 1e299


def decode_bound(v):
    if v >= INF_SENTINEL:
        return np.inf
    if v <= -INF_SENTINEL:
        return -np.inf
    return v


def run(req):
    n = int(req["n"])
    sign = -1.0 if req["sense"] == "max" else 1.0
    c = np.zeros(n)
    for v, coef in zip(req["obj_idx"], req["obj_val"]):
        c[v] += coef
    c *= sign

    integrality = np.array(req["integrality"], dtype=np.uint8)
    lb = np.array([decode_bound(v) for v in req["lb"]], dtype=float)
    ub = np.array([decode_bound(v) for v in req["ub"]], dtype=float)

    constraints = []
    m = len(req["row_lb"])
    if m:
        a = sparse.csr_matrix(
            (req["vals"], (req["rows"], req["cols"])), shape=(m, n)
        )
        rlb = np.array([decode_bound(v) for v in req["row_lb"]], dtype=float)
        rub = np.array([decode_bound(v) for v in req["row_ub"]], dtype=float)
        constraints.append(LinearConstraint(a, rlb, rub))

    options = {"presolve": True}
    if req.get("time_limit") is not None:
        options["time_limit"] = float(req["time_limit"])
    if req.get("mip_rel_gap") is not None:
        options["mip_rel_gap"] = float(req["mip_rel_gap"])

    res = milp(
        c=c,
        constraints=constraints,
        integrality=integrality,
        bounds=Bounds(lb, ub),
        options=options,
    )
    out = {"solver_status": int(res.status), "message": str(res.message)}
    if res.x is not None:
        out["x"] = [float(v) for v in res.x]
        out["obj"] = sign * float(res.fun)
    bound = getattr(res, "mip_dual_bound", None)
    if bound is not None and np.isfinite(bound):
        out["bound"] = sign * float(bound)
    return out


def main():
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        req = json.loads(line)
        if req.get("op") == "quit":
            return
        try:
            reply = run(req)
        except Exception as exc:  # report, never die mid-session
            reply = {"solver_status": -1, "message": f"bridge error: {exc!r}"}
        sys.stdout.write(json.dumps(reply) + "\n")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
)PYBRIDGE";

constexpr double kInfSentinel = 1e300;

double encode_bound(double v) {
    if (std::isinf(v)) return v > 0 ? kInfSentinel : -kInfSentinel;
    return v;
}

std::string write_bridge_script() {
    char path[] = "/tmp/milp_worker_XXXXXX.py";
    const int fd = mkstemps(path, 3);
    if (fd < 0) throw std::runtime_error("solver: cannot create worker script");
    const std::size_t len = std::strlen(kBridgeSource);
    std::size_t off = 0;
    while (off < len) {
        const ssize_t n = ::write(fd, kBridgeSource + off, len - off);
        if (n <= 0) {
            ::close(fd);
            throw std::runtime_error("solver: cannot write worker script");
        }
        off += static_cast<std::size_t>(n);
    }
    ::close(fd);
    return path;
}

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleTimeLimit: return "time_limit_feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unknown: return "unknown";
    }
    return "unknown";
}

Solver::Solver(std::string python_executable) : python_(std::move(python_executable)) {
    // A dead worker must surface as EPIPE on write, not kill the process.
    ::signal(SIGPIPE, SIG_IGN);
    script_path_ = write_bridge_script();
}

Solver::~Solver() {
    stop();
    if (!script_path_.empty()) ::unlink(script_path_.c_str());
}

void Solver::start() {
    if (pid_ > 0) return;
    int to_child[2], from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0)
        throw std::runtime_error("solver: pipe failed");
    const long pid = ::fork();
    if (pid < 0) throw std::runtime_error("solver: fork failed");
    if (pid == 0) {
        ::dup2(to_child[0], STDIN_FILENO);
        ::dup2(from_child[1], STDOUT_FILENO);
        ::close(to_child[0]);
        ::close(to_child[1]);
        ::close(from_child[0]);
        ::close(from_child[1]);
        ::execlp(python_.c_str(), python_.c_str(), script_path_.c_str(), static_cast<char*>(nullptr));
        std::perror("solver: exec python failed");
        _exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    to_child_ = to_child[1];
    from_child_ = from_child[0];
    pid_ = pid;
    buffer_.clear();
}

void Solver::stop() {
    if (pid_ <= 0) return;
    write_line(R"({"op":"quit"})");
    ::close(to_child_);
    ::close(from_child_);
    int status = 0;
    // Give it a moment to exit cleanly, then force.
    for (int i = 0; i < 50; ++i) {
        if (::waitpid(static_cast<pid_t>(pid_), &status, WNOHANG) != 0) {
            pid_ = -1;
            break;
        }
        ::usleep(10000);
    }
    if (pid_ > 0) {
        ::kill(static_cast<pid_t>(pid_), SIGKILL);
        ::waitpid(static_cast<pid_t>(pid_), &status, 0);
        pid_ = -1;
    }
    to_child_ = -1;
    from_child_ = -1;
}

bool Solver::write_line(const std::string& line) {
    if (to_child_ < 0) return false;
    std::string payload = line;
    payload.push_back('\n');
    std::size_t off = 0;
    while (off < payload.size()) {
        const ssize_t n = ::write(to_child_, payload.data() + off, payload.size() - off);
        if (n <= 0) return false;
        off += static_cast<std::size_t>(n);
    }
    return true;
}

bool Solver::read_line(std::string& line, double timeout_seconds) {
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(timeout_seconds));
    while (true) {
        const auto pos = buffer_.find('\n');
        if (pos != std::string::npos) {
            line = buffer_.substr(0, pos);
            buffer_.erase(0, pos + 1);
            return true;
        }
        double remain = 1e9;
        if (timeout_seconds > 0) {
            remain = std::chrono::duration<double>(deadline - std::chrono::steady_clock::now()).count();
            if (remain <= 0) return false;
        }
        struct pollfd pfd {
            from_child_, POLLIN, 0
        };
        const int rc = ::poll(&pfd, 1, static_cast<int>(std::min(remain * 1000.0, 2.0e9)));
        if (rc < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        if (rc == 0) return false;  // timed out
        char chunk[65536];
        const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
        if (n <= 0) return false;  // worker died
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

SolveResult Solver::solve(const AbstractMilp& model, double time_limit_seconds,
                          const SolverParams& params) {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    SolveResult res;

    // Degenerate model without columns: every row is a constant comparison.
    if (model.vars.empty()) {
        bool ok = true;
        for (const auto& c : model.cons) {
            const bool row_ok = c.rel == Rel::LE ? 0.0 <= c.rhs + 1e-9
                                : c.rel == Rel::GE ? 0.0 >= c.rhs - 1e-9
                                                   : std::fabs(c.rhs) <= 1e-9;
            ok = ok && row_ok;
        }
        res.status = ok ? SolveStatus::Optimal : SolveStatus::Infeasible;
        res.objective = model.objective.constant;
        res.seconds = elapsed();
        return res;
    }

    json req;
    req["n"] = model.vars.size();
    req["sense"] = model.sense == ObjSense::Maximize ? "max" : "min";
    {
        std::vector<int> oi;
        std::vector<double> ov;
        for (const auto& t : model.objective.terms) {
            oi.push_back(t.var);
            ov.push_back(t.coef);
        }
        req["obj_idx"] = std::move(oi);
        req["obj_val"] = std::move(ov);
    }
    {
        std::vector<int> integrality;
        std::vector<double> lb, ub;
        integrality.reserve(model.vars.size());
        for (const auto& v : model.vars) {
            integrality.push_back(v.kind == VarKind::Continuous ? 0 : 1);
            lb.push_back(encode_bound(v.lb));
            ub.push_back(encode_bound(v.ub));
        }
        req["integrality"] = std::move(integrality);
        req["lb"] = std::move(lb);
        req["ub"] = std::move(ub);
    }
    {
        std::vector<int> rows, cols;
        std::vector<double> vals, rlb, rub;
        for (std::size_t r = 0; r < model.cons.size(); ++r) {
            const auto& c = model.cons[r];
            for (const auto& t : c.terms) {
                rows.push_back(static_cast<int>(r));
                cols.push_back(t.var);
                vals.push_back(t.coef);
            }
            rlb.push_back(c.rel == Rel::LE ? -kInfSentinel : c.rhs);
            rub.push_back(c.rel == Rel::GE ? kInfSentinel : c.rhs);
        }
        req["rows"] = std::move(rows);
        req["cols"] = std::move(cols);
        req["vals"] = std::move(vals);
        req["row_lb"] = std::move(rlb);
        req["row_ub"] = std::move(rub);
    }
    if (time_limit_seconds > 0) req["time_limit"] = time_limit_seconds;
    req["mip_rel_gap"] = params.rel_gap;

    start();
    std::string reply_line;
    // Generous envelope on top of the solver-side limit: model transfer,
    // presolve and solution extraction all run inside the worker.
    const double envelope =
        time_limit_seconds > 0 ? time_limit_seconds + 120.0 + 1e-7 * static_cast<double>(model.cons.size())
                               : -1.0;
    if (!write_line(req.dump()) || !read_line(reply_line, envelope)) {
        // Worker wedged or died: kill it so the next call gets a fresh one.
        if (pid_ > 0) {
            ::kill(static_cast<pid_t>(pid_), SIGKILL);
            int status = 0;
            ::waitpid(static_cast<pid_t>(pid_), &status, 0);
            pid_ = -1;
            ::close(to_child_);
            ::close(from_child_);
            to_child_ = -1;
            from_child_ = -1;
        }
        res.status = SolveStatus::Unknown;
        res.message = "solver worker did not reply within the time envelope";
        res.seconds = elapsed();
        return res;
    }

    json reply;
    try {
        reply = json::parse(reply_line);
    } catch (const std::exception& e) {
        res.status = SolveStatus::Unknown;
        res.message = std::string("unparseable worker reply: ") + e.what();
        res.seconds = elapsed();
        return res;
    }

    const int status = reply.value("solver_status", -1);
    res.message = reply.value("message", "");
    const bool has_x = reply.contains("x");

    if (has_x) {
        res.values = reply["x"].get<std::vector<double>>();
        if (res.values.size() != model.vars.size()) {
            res.status = SolveStatus::Unknown;
            res.message = "worker returned a solution of the wrong size";
            res.seconds = elapsed();
            return res;
        }
        for (std::size_t v = 0; v < res.values.size(); ++v) {
            if (model.vars[v].kind == VarKind::Continuous) continue;
            const double r = std::round(res.values[v]);
            if (std::fabs(res.values[v] - r) > 1e-6) {
                res.status = SolveStatus::Unknown;
                res.message = "integer variable " + model.vars[v].name + " off-integer by more than 1e-6";
                res.values.clear();
                res.seconds = elapsed();
                return res;
            }
            res.values[v] = r;
        }
        if (auto bad = violated_constraints(model, res.values); !bad.empty()) {
            res.status = SolveStatus::Unknown;
            res.message = "rounded solution violates " + bad.front();
            res.values.clear();
            res.seconds = elapsed();
            return res;
        }
        res.objective = eval_expr(model.objective, res.values);
    }
    if (reply.contains("bound")) res.best_bound = reply["bound"].get<double>() + model.objective.constant;

    switch (status) {
        case 0:
            res.status = has_x ? SolveStatus::Optimal : SolveStatus::Unknown;
            break;
        case 1:
            res.status = has_x ? SolveStatus::FeasibleTimeLimit : SolveStatus::Unknown;
            break;
        case 2:
            res.status = SolveStatus::Infeasible;
            break;
        default:
            res.status = SolveStatus::Unknown;  // unbounded or numerical trouble
            break;
    }
    res.seconds = elapsed();
    return res;
}

}  // namespace defsched
