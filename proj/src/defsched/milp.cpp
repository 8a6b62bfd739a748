#include "defsched/milp.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace defsched {

void LinearExpr::add(const LinearExpr& other, double scale) {
    constant += scale * other.constant;
    for (const auto& t : other.terms) add(t.var, scale * t.coef);
}

int AbstractMilp::add_var(std::string name, VarKind kind, double lb, double ub) {
    if (lb > ub) throw std::invalid_argument("add_var: lb > ub for " + name);
    vars.push_back({std::move(name), lb, ub, kind});
    return static_cast<int>(vars.size()) - 1;
}

int AbstractMilp::add_constraint(std::string name, std::vector<LinTerm> terms, Rel rel, double rhs) {
    for (const auto& t : terms)
        if (t.var < 0 || t.var >= static_cast<int>(vars.size()))
            throw std::invalid_argument("add_constraint: unknown variable in " + name);
    cons.push_back({std::move(name), std::move(terms), rel, rhs});
    return static_cast<int>(cons.size()) - 1;
}

void AbstractMilp::replace_constraint(int row, std::vector<LinTerm> terms, Rel rel, double rhs) {
    if (row < 0 || row >= static_cast<int>(cons.size()))
        throw std::invalid_argument("replace_constraint: row out of range");
    auto name = cons[static_cast<std::size_t>(row)].name;
    cons[static_cast<std::size_t>(row)] = {std::move(name), std::move(terms), rel, rhs};
}

double eval_expr(const LinearExpr& e, const std::vector<double>& values) {
    double v = e.constant;
    for (const auto& t : e.terms) v += t.coef * values[static_cast<std::size_t>(t.var)];
    return v;
}

namespace {

bool integral(double x) { return std::fabs(x - std::round(x)) < 1e-9 && std::fabs(x) < 9.0e15; }

}  // namespace

std::int64_t eval_expr_exact(const LinearExpr& e, const std::vector<double>& values) {
    if (!integral(e.constant)) throw std::invalid_argument("eval_expr_exact: non-integral constant");
    std::int64_t v = static_cast<std::int64_t>(std::llround(e.constant));
    for (const auto& t : e.terms) {
        const double x = values[static_cast<std::size_t>(t.var)];
        if (!integral(t.coef) || !integral(x))
            throw std::invalid_argument("eval_expr_exact: non-integral term");
        v += static_cast<std::int64_t>(std::llround(t.coef)) * static_cast<std::int64_t>(std::llround(x));
    }
    return v;
}

std::vector<std::string> violated_constraints(const AbstractMilp& m, const std::vector<double>& values,
                                              double tol) {
    std::vector<std::string> bad;
    if (values.size() != m.vars.size())
        throw std::invalid_argument("violated_constraints: value vector size mismatch");

    for (std::size_t v = 0; v < m.vars.size(); ++v) {
        const auto& var = m.vars[v];
        if (values[v] < var.lb - tol || values[v] > var.ub + tol)
            bad.push_back("bounds:" + var.name);
    }

    for (const auto& c : m.cons) {
        bool exact = true;
        for (const auto& t : c.terms)
            if (!integral(t.coef) || m.vars[static_cast<std::size_t>(t.var)].kind == VarKind::Continuous ||
                !integral(values[static_cast<std::size_t>(t.var)]))
                exact = false;
        if (exact && integral(c.rhs)) {
            std::int64_t lhs = 0;
            for (const auto& t : c.terms)
                lhs += static_cast<std::int64_t>(std::llround(t.coef)) *
                       static_cast<std::int64_t>(std::llround(values[static_cast<std::size_t>(t.var)]));
            const auto rhs = static_cast<std::int64_t>(std::llround(c.rhs));
            const bool ok = c.rel == Rel::LE ? lhs <= rhs : c.rel == Rel::GE ? lhs >= rhs : lhs == rhs;
            if (!ok) bad.push_back(c.name);
        } else {
            double lhs = 0.0;
            for (const auto& t : c.terms) lhs += t.coef * values[static_cast<std::size_t>(t.var)];
            const bool ok = c.rel == Rel::LE   ? lhs <= c.rhs + tol
                            : c.rel == Rel::GE ? lhs >= c.rhs - tol
                                               : std::fabs(lhs - c.rhs) <= tol;
            if (!ok) bad.push_back(c.name);
        }
    }
    return bad;
}

namespace {

void print_coef(std::ostream& os, double c, bool lead) {
    const double a = std::fabs(c);
    if (!lead)
        os << (c < 0 ? " - " : " + ");
    else if (c < 0)
        os << "- ";
    if (integral(a)) {
        os << static_cast<long long>(std::llround(a));
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", a);
        os << buf;
    }
}

void print_terms(std::ostream& os, const std::vector<LinTerm>& terms, const AbstractMilp& m) {
    bool lead = true;
    for (const auto& t : terms) {
        if (t.coef == 0.0) continue;
        print_coef(os, t.coef, lead);
        os << " " << m.vars[static_cast<std::size_t>(t.var)].name;
        lead = false;
    }
    if (lead) os << "0 " << m.vars.front().name;  // empty row: keep the file parseable
}

}  // namespace

void write_lp(const AbstractMilp& m, std::ostream& os) {
    os << (m.sense == ObjSense::Maximize ? "Maximize" : "Minimize") << "\n obj: ";
    print_terms(os, m.objective.terms, m);
    if (m.objective.constant != 0.0) os << "\n\\ objective constant: " << m.objective.constant;
    os << "\nSubject To\n";
    for (const auto& c : m.cons) {
        os << " " << c.name << ": ";
        print_terms(os, c.terms, m);
        os << (c.rel == Rel::LE ? " <= " : c.rel == Rel::GE ? " >= " : " = ");
        print_coef(os, c.rhs, true);
        os << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : m.vars) {
        if (v.kind == VarKind::Binary) continue;  // declared below; 0/1 implied
        os << " ";
        print_coef(os, v.lb, true);
        os << " <= " << v.name << " <= ";
        print_coef(os, v.ub, true);
        os << "\n";
    }
    bool any = false;
    for (const auto& v : m.vars)
        if (v.kind == VarKind::Binary) {
            os << (any ? " " : "Binaries\n ") << v.name;
            any = true;
        }
    if (any) os << "\n";
    any = false;
    for (const auto& v : m.vars)
        if (v.kind == VarKind::Integer) {
            os << (any ? " " : "Generals\n ") << v.name;
            any = true;
        }
    if (any) os << "\n";
    os << "End\n";
}

}  // namespace defsched
