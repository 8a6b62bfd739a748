#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace defsched {

enum class VarKind { Binary, Integer, Continuous };
enum class Rel { LE, GE, EQ };
enum class ObjSense { Minimize, Maximize };

struct Variable {
    std::string name;
    double lb = 0.0;
    double ub = 1.0;
    VarKind kind = VarKind::Binary;
};

struct LinTerm {
    int var = -1;
    double coef = 0.0;
};

struct LinearExpr {
    std::vector<LinTerm> terms;
    double constant = 0.0;

    void add(int var, double coef) {
        if (coef != 0.0) terms.push_back({var, coef});
    }
    void add(const LinearExpr& other, double scale = 1.0);
};

struct Constraint {
    std::string name;
    std::vector<LinTerm> terms;
    Rel rel = Rel::LE;
    double rhs = 0.0;
};

// Solver-independent MILP. Rows and columns are append-only except that a row
// may be replaced in place (used when the committee-count equality changes).
struct AbstractMilp {
    std::vector<Variable> vars;
    std::vector<Constraint> cons;
    LinearExpr objective;
    ObjSense sense = ObjSense::Maximize;

    int add_var(std::string name, VarKind kind, double lb, double ub);
    int add_constraint(std::string name, std::vector<LinTerm> terms, Rel rel, double rhs);
    void replace_constraint(int row, std::vector<LinTerm> terms, Rel rel, double rhs);
};

// Expression value at a full variable assignment.
double eval_expr(const LinearExpr& e, const std::vector<double>& values);

// Exact integer value; throws std::invalid_argument if any coefficient, the
// constant, or a referenced value is not integral.
std::int64_t eval_expr_exact(const LinearExpr& e, const std::vector<double>& values);

// Names of constraints and variable bounds violated at `values`. Rows whose
// coefficients and variables are all integral are checked exactly in 64-bit
// integers; everything else within `tol`.
std::vector<std::string> violated_constraints(const AbstractMilp& m, const std::vector<double>& values,
                                              double tol = 1e-6);

// CPLEX-style LP text. Integral coefficients are printed as integers, others
// with 17 significant digits, so nothing is lost to formatting.
void write_lp(const AbstractMilp& m, std::ostream& os);

}  // namespace defsched
