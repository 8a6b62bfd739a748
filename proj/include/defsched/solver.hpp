#pragma once

#include <string>
#include <vector>

#include "defsched/milp.hpp"

namespace defsched {

enum class SolveStatus { Optimal, FeasibleTimeLimit, Infeasible, Unknown };

const char* to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::Unknown;
    std::vector<double> values;  // full column vector when an incumbent exists, else empty
    double objective = 0.0;      // in the model's sense, incl. the expression constant
    double best_bound = 0.0;
    double seconds = 0.0;
    std::string message;
};

struct SolverParams {
    int seed = 0;            // accepted for interface stability; inert for this backend
    int threads = 0;         // inert: the backend runs single-threaded
    double abs_gap = 0.0;    // inert: not exposed by the backend
    double rel_gap = 1e-9;   // tight enough that integer objectives are exact
    bool deterministic = false;  // the backend is deterministic by construction
};

// MILP solves through a long-lived worker process running the HiGHS solver
// (via scipy). One worker per Solver object; requests and replies are
// line-delimited JSON. The worker is started lazily, restarted if it dies, and
// killed if it overruns the time limit by a wide margin.
class Solver {
public:
    explicit Solver(std::string python_executable = "python3");
    ~Solver();
    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    // time_limit_seconds <= 0 means no limit. Integer variables are rounded
    // (they must land within 1e-6 of an integer) and the rounded point is
    // re-checked against every constraint before the result is returned.
    SolveResult solve(const AbstractMilp& model, double time_limit_seconds,
                      const SolverParams& params = {});

private:
    void start();
    void stop();
    bool write_line(const std::string& line);
    // Reads one reply line; false on timeout/EOF (worker is killed on timeout).
    bool read_line(std::string& line, double timeout_seconds);

    std::string python_;
    std::string script_path_;
    int to_child_ = -1;
    int from_child_ = -1;
    long pid_ = -1;
    std::string buffer_;
};

}  // namespace defsched
