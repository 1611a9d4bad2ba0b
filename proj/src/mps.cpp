#include "h2plan/mps.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace h2plan::solve {
namespace {

constexpr const char* kObjRow = "COST";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

}  // namespace

std::string mps_text(const LinearProgram& lp, const std::string& model_name) {
    {
        std::unordered_map<std::string, int> seen;
        for (const auto& v : lp.vars)
            if (++seen[v.name] > 1)
                throw std::runtime_error("duplicate variable name '" + v.name + "'");
        seen.clear();
        for (const auto& r : lp.rows)
            if (r.name == kObjRow || ++seen[r.name] > 1)
                throw std::runtime_error("duplicate or reserved row name '" + r.name + "'");
    }

    std::ostringstream os;
    os << "NAME " << model_name << "\n";
    os << "OBJSENSE\n    MIN\n";
    os << "ROWS\n";
    os << " N " << kObjRow << "\n";
    for (const auto& r : lp.rows)
        os << ' ' << static_cast<char>(r.sense) << ' ' << r.name << "\n";

    // column-major view
    std::vector<std::vector<std::pair<int, double>>> cols(lp.vars.size());
    for (size_t i = 0; i < lp.rows.size(); ++i)
        for (const auto& [var, coeff] : lp.rows[i].terms)
            cols[static_cast<size_t>(var)].emplace_back(static_cast<int>(i), coeff);

    os << "COLUMNS\n";
    bool in_int = false;
    int marker = 0;
    for (size_t j = 0; j < lp.vars.size(); ++j) {
        const auto& v = lp.vars[j];
        if (v.integral != in_int) {
            os << "    MARKER" << marker++ << " 'MARKER' "
               << (v.integral ? "'INTORG'" : "'INTEND'") << "\n";
            in_int = v.integral;
        }
        if (lp.obj[j] != 0.0)
            os << "    " << v.name << ' ' << kObjRow << ' ' << fmt(lp.obj[j]) << "\n";
        for (const auto& [row, coeff] : cols[j])
            os << "    " << v.name << ' ' << lp.rows[static_cast<size_t>(row)].name << ' '
               << fmt(coeff) << "\n";
        if (lp.obj[j] == 0.0 && cols[j].empty())
            os << "    " << v.name << ' ' << kObjRow << " 0\n";  // keep the column alive
    }
    if (in_int) os << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";

    os << "RHS\n";
    if (lp.obj_constant != 0.0)
        os << "    RHS " << kObjRow << ' ' << fmt(-lp.obj_constant) << "\n";
    for (const auto& r : lp.rows)
        if (r.rhs != 0.0) os << "    RHS " << r.name << ' ' << fmt(r.rhs) << "\n";

    os << "BOUNDS\n";
    for (const auto& v : lp.vars) {
        if (std::isfinite(v.lb) && v.lb == v.ub) {
            os << " FX BND " << v.name << ' ' << fmt(v.lb) << "\n";
            continue;
        }
        if (!std::isfinite(v.lb) && !std::isfinite(v.ub)) {
            os << " FR BND " << v.name << "\n";
            continue;
        }
        if (!std::isfinite(v.lb))
            os << " MI BND " << v.name << "\n";
        else if (v.lb != 0.0)
            os << " LO BND " << v.name << ' ' << fmt(v.lb) << "\n";
        if (std::isfinite(v.ub)) os << " UP BND " << v.name << ' ' << fmt(v.ub) << "\n";
    }
    os << "ENDATA\n";
    return os.str();
}

void export_mps(const LinearProgram& lp, const std::filesystem::path& path,
                const std::string& model_name) {
    std::string text = mps_text(lp, model_name);  // throws before touching the file
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write MPS file '" + path.string() + "'");
    out << text;
}

LinearProgram parse_mps(const std::string& text) {
    LinearProgram lp;
    std::unordered_map<std::string, int> row_of, var_of;
    std::string obj_name;
    enum Section { None, Rows, Columns, Rhs, Ranges, Bounds } section = None;
    bool in_int = false;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto err = [&](const std::string& msg) {
        throw std::runtime_error("MPS line " + std::to_string(lineno) + ": " + msg);
    };
    auto var_index = [&](const std::string& name) {
        auto it = var_of.find(name);
        if (it != var_of.end()) return it->second;
        const int j = lp.add_var(name, 0.0, kInf, 0.0, in_int);
        var_of.emplace(name, j);
        return j;
    };

    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '*') continue;
        const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
        auto tk = tokens(line);
        if (tk.empty()) continue;
        if (header) {
            const std::string& kw = tk[0];
            if (kw == "NAME") {
                continue;
            } else if (kw == "OBJSENSE") {
                std::streampos save = is.tellg();
                std::string next;
                if (std::getline(is, next)) {
                    ++lineno;
                    auto ntk = tokens(next);
                    if (ntk.size() == 1 &&
                        std::isspace(static_cast<unsigned char>(next[0]))) {
                        if (ntk[0] == "MAX" || ntk[0] == "MAXIMIZE")
                            err("only MIN objectives are supported");
                    } else {
                        is.seekg(save);
                        --lineno;
                    }
                }
                continue;
            } else if (kw == "ROWS") {
                section = Rows;
            } else if (kw == "COLUMNS") {
                section = Columns;
            } else if (kw == "RHS") {
                section = Rhs;
            } else if (kw == "RANGES") {
                err("RANGES sections are not supported");
            } else if (kw == "BOUNDS") {
                section = Bounds;
            } else if (kw == "ENDATA") {
                break;
            } else {
                err("unknown section '" + kw + "'");
            }
            continue;
        }
        switch (section) {
            case Rows: {
                if (tk.size() != 2) err("expected '<sense> <name>'");
                if (tk[0] == "N") {
                    if (obj_name.empty())
                        obj_name = tk[1];
                    else
                        err("multiple objective rows");
                } else if (tk[0] == "L" || tk[0] == "G" || tk[0] == "E") {
                    if (row_of.count(tk[1])) err("duplicate row '" + tk[1] + "'");
                    row_of[tk[1]] =
                        lp.add_row(tk[1], static_cast<RowSense>(tk[0][0]), 0.0, {});
                } else {
                    err("bad row sense '" + tk[0] + "'");
                }
                break;
            }
            case Columns: {
                if (tk.size() >= 3 && tk[1] == "'MARKER'") {
                    if (tk[2] == "'INTORG'")
                        in_int = true;
                    else if (tk[2] == "'INTEND'")
                        in_int = false;
                    else
                        err("bad marker");
                    break;
                }
                if (tk.size() < 3 || tk.size() % 2 == 0) err("expected 'var row value' pairs");
                const int j = var_index(tk[0]);
                for (size_t k = 1; k + 1 < tk.size() + 1 && k + 1 <= tk.size(); k += 2) {
                    const std::string& rname = tk[k];
                    const double val = std::stod(tk[k + 1]);
                    if (rname == obj_name) {
                        lp.add_obj(j, val);
                    } else {
                        auto it = row_of.find(rname);
                        if (it == row_of.end()) err("unknown row '" + rname + "'");
                        lp.rows[static_cast<size_t>(it->second)].terms.emplace_back(j, val);
                    }
                }
                break;
            }
            case Rhs: {
                if (tk.size() < 3 || tk.size() % 2 == 0) err("expected 'set row value' pairs");
                for (size_t k = 1; k + 1 <= tk.size() - 1; k += 2) {
                    const std::string& rname = tk[k];
                    const double val = std::stod(tk[k + 1]);
                    if (rname == obj_name) {
                        lp.obj_constant = -val;
                    } else {
                        auto it = row_of.find(rname);
                        if (it == row_of.end()) err("unknown row '" + rname + "'");
                        lp.rows[static_cast<size_t>(it->second)].rhs = val;
                    }
                }
                break;
            }
            case Bounds: {
                if (tk.size() < 3) err("expected '<type> <set> <var> [value]'");
                const std::string& type = tk[0];
                const int j = var_index(tk[2]);
                auto& v = lp.vars[static_cast<size_t>(j)];
                const double val = tk.size() >= 4 ? std::stod(tk[3]) : 0.0;
                if (type == "UP")
                    v.ub = val;
                else if (type == "LO")
                    v.lb = val;
                else if (type == "FX")
                    v.lb = v.ub = val;
                else if (type == "FR") {
                    v.lb = -kInf;
                    v.ub = kInf;
                } else if (type == "MI")
                    v.lb = -kInf;
                else if (type == "PL")
                    v.ub = kInf;
                else if (type == "BV") {
                    v.lb = 0.0;
                    v.ub = 1.0;
                    v.integral = true;
                } else
                    err("unsupported bound type '" + type + "'");
                break;
            }
            case Ranges:
            case None:
                err("data line outside a section");
        }
    }
    if (obj_name.empty()) throw std::runtime_error("MPS file has no objective row");
    lp.canonicalize();
    if (std::string e = lp.check_well_formed(); !e.empty())
        throw std::runtime_error("imported MPS is malformed: " + e);
    return lp;
}

LinearProgram import_mps(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open MPS file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_mps(buf.str());
}

SolveResult import_solution(const std::filesystem::path& path, const LinearProgram& lp,
                            double tol) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file '" + path.string() + "'");
    std::unordered_map<std::string, int> var_of;
    for (size_t j = 0; j < lp.vars.size(); ++j)
        var_of[lp.vars[j].name] = static_cast<int>(j);

    std::vector<double> x(lp.vars.size(), 0.0);
    std::vector<bool> seen(lp.vars.size(), false);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tk = tokens(line);
        if (tk.empty() || tk[0][0] == '#') continue;
        if (tk.size() != 2)
            throw std::runtime_error("solution line " + std::to_string(lineno) +
                                     ": expected 'name value'");
        auto it = var_of.find(tk[0]);
        if (it == var_of.end())
            throw std::runtime_error("solution line " + std::to_string(lineno) +
                                     ": unknown variable '" + tk[0] + "'");
        x[static_cast<size_t>(it->second)] = std::stod(tk[1]);
        seen[static_cast<size_t>(it->second)] = true;
    }
    for (size_t j = 0; j < seen.size(); ++j)
        if (!seen[j])
            throw std::runtime_error("solution file is missing variable '" + lp.vars[j].name +
                                     "'");

    VerifyReport rep = verify_point(lp, x, tol);
    if (!rep.ok)
        throw std::runtime_error("imported point violates '" + rep.worst_row +
                                 "' by " + std::to_string(rep.max_violation) +
                                 " (relative)");
    SolveResult out;
    out.status = SolveStatus::Optimal;
    out.x = std::move(x);
    out.objective = rep.objective_recomputed;
    out.message = "imported from " + path.string();
    return out;
}

}  // namespace h2plan::solve
