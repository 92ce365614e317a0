// hochrr: batch front end for the exact Riemann-Roch toolkit.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hochrr/charclass.hpp"
#include "hochrr/hochschild.hpp"
#include "hochrr/series.hpp"
#include "json.hpp"

using namespace hochrr;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Job {
    std::string variety = "P2";
    std::string sheaf = "O(0)";
    std::string which = "l";
    int order = 8;
    int nvars = 2;
    int max_degree = 2;
    int cap = 4;
    int internal_min = -2;
    int internal_max = 2;
    int margin = 2;
    bool json_out = false;
};

Variety parse_variety(const std::string& s) {
    std::vector<int> dims;
    size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] != 'P')
            throw UsageError("bad variety '" + s + "': expected P<n>[xP<m>...]");
        ++pos;
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (start == pos)
            throw UsageError("bad variety '" + s + "': missing dimension");
        dims.push_back(std::stoi(s.substr(start, pos - start)));
        if (pos < s.size()) {
            if (s[pos] != 'x')
                throw UsageError("bad variety '" + s + "': expected 'x'");
            ++pos;
        }
    }
    if (dims.empty())
        throw UsageError("empty variety spec");
    for (int d : dims)
        if (d < 1 || d > 3)
            throw UsageError("variety factors must be P1..P3");
    return Variety(dims);
}

// Sheaf expression grammar (precedence dual/wedge/sym > tensor '*' > sum '+'):
//   expr   := term { '+' term }
//   term   := factor { '*' factor }
//   factor := dual '(' expr ')' | wedge '(' expr ',' int ')' | sym '(' expr ',' int ')'
//           | twist '(' expr ',' ints ')' | tensor '(' expr ',' expr ')'
//           | sum '(' expr ',' expr ')' | O '(' ints ')' | T | Omega [ '^' int ]
//           | '(' expr ')'
class SheafParser {
public:
    SheafParser(const Variety& X, const std::string& text) : X_(X), text_(text) {}

    Sheaf parse() {
        Sheaf E = expr();
        skip();
        if (pos_ != text_.size())
            throw UsageError("trailing input in sheaf expression '" + text_ + "'");
        return E;
    }

private:
    const Variety& X_;
    std::string text_;
    size_t pos_ = 0;

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw UsageError(std::string("expected '") + c + "' in sheaf expression");
    }
    std::string ident() {
        skip();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }
    int integer() {
        skip();
        size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
            ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            throw UsageError("expected integer in sheaf expression");
        return std::stoi(text_.substr(start, pos_ - start));
    }
    std::vector<int> integers() {
        std::vector<int> out = {integer()};
        while (eat(','))
            out.push_back(integer());
        return out;
    }
    std::vector<int> degrees() {
        auto d = integers();
        if (static_cast<int>(d.size()) != X_.nfactors())
            throw UsageError("degree list length must match the number of factors");
        return d;
    }

    Sheaf expr() {
        Sheaf E = term();
        while (eat('+'))
            E = direct_sum_sheaf(E, term());
        return E;
    }
    Sheaf term() {
        Sheaf E = factor();
        while (eat('*'))
            E = tensor_sheaf(E, factor());
        return E;
    }
    Sheaf factor() {
        if (eat('(')) {
            Sheaf E = expr();
            expect(')');
            return E;
        }
        std::string name = ident();
        if (name == "O") {
            expect('(');
            auto d = degrees();
            expect(')');
            return line_bundle(X_, d);
        }
        if (name == "T")
            return tangent(X_);
        if (name == "Omega") {
            int p = 1;
            if (eat('^'))
                p = integer();
            return omega_p(X_, p);
        }
        if (name == "dual") {
            expect('(');
            Sheaf E = expr();
            expect(')');
            return dual_sheaf(E);
        }
        if (name == "wedge" || name == "sym") {
            expect('(');
            Sheaf E = expr();
            expect(',');
            int p = integer();
            expect(')');
            return name == "wedge" ? wedge_power_sheaf(E, p) : sym_power_sheaf(E, p);
        }
        if (name == "twist") {
            expect('(');
            Sheaf E = expr();
            expect(',');
            auto d = degrees();
            expect(')');
            return twist_sheaf(E, d);
        }
        if (name == "tensor" || name == "sum") {
            expect('(');
            Sheaf a = expr();
            expect(',');
            Sheaf b = expr();
            expect(')');
            return name == "tensor" ? tensor_sheaf(a, b) : direct_sum_sheaf(a, b);
        }
        throw UsageError("unknown sheaf token '" + name + "'");
    }
};

Sheaf parse_sheaf(const Variety& X, const std::string& s) {
    return SheafParser(X, s).parse();
}

void emit(const Job& job, const json& doc, const std::string& human) {
    if (job.json_out)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << human;
}

json report_json(const Report& r) {
    return json::parse(r.to_json());
}

std::string report_human(const Report& r) {
    std::ostringstream out;
    out << r.identity << " on " << r.variety << ":\n";
    for (auto& c : r.components)
        out << "  p=" << c.p << " degree=" << c.degree << " status=" << c.status
            << " dim_target=" << c.dim_target << "\n";
    return out.str();
}

// intersection numbers of a (p, p) class against complementary products of
// factor hyperplane classes, in lexicographic multi-degree order
std::vector<std::pair<std::vector<int>, Rat>> intersections(const MixedClass& m, int p) {
    const Variety& X = m.X;
    int n = X.dim(), k = X.nfactors();
    std::vector<std::pair<std::vector<int>, Rat>> out;
    auto it = m.comp.find({p, p});
    std::vector<int> d(k, 0);
    std::function<void(int, int)> rec = [&](int f, int left) {
        if (f == k - 1) {
            if (left > X.factor_dims()[f])
                return;
            d[f] = left;
            Rat v = 0;
            if (it != m.comp.end()) {
                CechCochain z = it->second;
                for (int g = 0; g < k; ++g)
                    for (int t = 0; t < d[g]; ++t) {
                        std::vector<int> unit(k, 0);
                        unit[g] = 1;
                        z = compose_cochains(z, c1_cocycle(X, unit));
                    }
                v = integrate(z);
            }
            out.push_back({d, v});
            return;
        }
        for (int v = 0; v <= std::min(left, X.factor_dims()[f]); ++v) {
            d[f] = v;
            rec(f + 1, left - v);
        }
    };
    rec(0, n - p);
    return out;
}

json class_table(const MixedClass& m, int dim) {
    json rows = json::array();
    for (int p = 0; p <= dim; ++p) {
        for (auto& [d, v] : intersections(m, p)) {
            json row;
            row["p"] = p;
            row["against"] = d;
            row["integral"] = rat_str(v);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string class_table_human(const json& rows) {
    std::ostringstream out;
    for (auto& row : rows) {
        out << "  p=" << row["p"] << " against h^" << row["against"].dump() << " -> "
            << row["integral"].get<std::string>() << "\n";
    }
    return out.str();
}

int run_coefficients(const Job& job) {
    if (job.which != "l" && job.which != "t")
        throw UsageError("--which must be l or t");
    if (job.order < 1)
        throw UsageError("--order must be positive");
    std::vector<Rat> values;
    int first = job.which == "l" ? 0 : 1;
    if (job.which == "l")
        values = l_coefficients(job.order);
    else
        values = t_coefficients(job.order);
    json doc;
    doc["command"] = "coefficients";
    doc["which"] = job.which;
    doc["order"] = job.order;
    doc["values"] = json::array();
    std::ostringstream human;
    for (size_t i = 0; i < values.size(); ++i) {
        doc["values"].push_back(rat_str(values[i]));
        human << job.which << "_" << first + static_cast<int>(i) << " = " << rat_str(values[i])
              << "\n";
    }
    emit(job, doc, human.str());
    return 0;
}

int run_hh(const Job& job) {
    if (job.nvars < 1 || job.nvars > 3 || job.max_degree < 0 || job.cap < 0)
        throw UsageError("hh: need 1 <= nvars <= 3 and nonnegative caps");
    json rows = json::array();
    bool all_equal = true;
    std::ostringstream human;
    for (int i = 0; i <= job.max_degree; ++i)
        for (int m = job.internal_min; m <= job.internal_max; ++m) {
            int hh = dual_bar_cohomology_dim(job.nvars, i, m, job.cap);
            int pv = polyvector_dim(job.nvars, i, m);
            all_equal = all_equal && hh == pv;
            json row;
            row["degree"] = i;
            row["internal"] = m;
            row["hh_dim"] = hh;
            row["polyvector_dim"] = pv;
            rows.push_back(row);
            human << "HH^" << i << " internal " << m << ": dim " << hh << " (polyvectors " << pv
                  << ")\n";
        }
    json doc;
    doc["command"] = "hh";
    doc["nvars"] = job.nvars;
    doc["cap"] = job.cap;
    doc["rows"] = rows;
    doc["all_equal"] = all_equal;
    human << (all_equal ? "all dimensions match\n" : "MISMATCH against polyvector fields\n");
    emit(job, doc, human.str());
    return all_equal ? 0 : 1;
}

int run_hkr_check(const Job& job) {
    if (job.nvars < 1 || job.nvars > 3 || job.max_degree < 1)
        throw UsageError("hkr-check: need 1 <= nvars <= 3 and max-degree >= 1");
    bool ok = true;
    json rows = json::array();
    std::ostringstream human;
    std::vector<std::vector<int>> subs;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (!cur.empty() && static_cast<int>(cur.size()) <= job.max_degree)
            subs.push_back(cur);
        if (static_cast<int>(cur.size()) == job.max_degree)
            return;
        for (int v = start; v < job.nvars; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    for (auto& S : subs) {
        ExteriorElement v(job.nvars);
        v.add(S, LaurentPoly::constant(job.nvars, 1));
        auto f = hkr_cochain(v, job.cap);
        bool cocycle = cochain_differential(f).is_zero();
        Rat fact = 1;
        for (int i = 1; i <= static_cast<int>(S.size()); ++i)
            fact *= i;
        KoszulElement k{S, Monomial(job.nvars, 0), Monomial(job.nvars, 0)};
        Rat pairing = hh_pairing(f, comparison_phi(job.nvars, k));
        bool good = cocycle && pairing == fact;
        ok = ok && good;
        json row;
        row["polyvector"] = S;
        row["cocycle"] = cocycle;
        row["pairing"] = rat_str(pairing);
        row["expected"] = rat_str(fact);
        rows.push_back(row);
        human << "del_S with S = [";
        for (size_t i = 0; i < S.size(); ++i)
            human << (i ? "," : "") << S[i];
        human << "]: cocycle=" << (cocycle ? "yes" : "NO") << " pairing=" << rat_str(pairing)
              << " expected=" << rat_str(fact) << "\n";
    }
    json doc;
    doc["command"] = "hkr-check";
    doc["nvars"] = job.nvars;
    doc["cap"] = job.cap;
    doc["rows"] = rows;
    doc["ok"] = ok;
    human << (ok ? "hkr checks pass\n" : "hkr checks FAIL\n");
    emit(job, doc, human.str());
    return ok ? 0 : 1;
}

int run_cohomology(const Job& job) {
    Variety X = parse_variety(job.variety);
    Sheaf E = parse_sheaf(X, job.sheaf);
    auto dims = cohomology_dims(E, job.margin);
    Int chi = 0;
    json doc;
    doc["command"] = "cohomology";
    doc["variety"] = job.variety;
    doc["sheaf"] = job.sheaf;
    doc["dims"] = json::array();
    std::ostringstream human;
    for (size_t q = 0; q < dims.size(); ++q) {
        doc["dims"].push_back(dims[q]);
        human << "h^" << q << " = " << dims[q] << "\n";
        chi += (q % 2 == 0 ? 1 : -1) * Int(dims[q]);
    }
    doc["euler_characteristic"] = chi.str();
    human << "chi = " << chi.str() << "\n";
    emit(job, doc, human.str());
    return 0;
}

int run_chern(const Job& job) {
    Variety X = parse_variety(job.variety);
    Sheaf E = parse_sheaf(X, job.sheaf);
    auto rows = class_table(chern_character(E), X.dim());
    json doc;
    doc["command"] = "chern";
    doc["variety"] = job.variety;
    doc["sheaf"] = job.sheaf;
    doc["components"] = rows;
    std::ostringstream human;
    human << "ch(" << job.sheaf << ") on " << job.variety << ":\n" << class_table_human(rows);
    emit(job, doc, human.str());
    return 0;
}

int run_todd(const Job& job) {
    Variety X = parse_variety(job.variety);
    auto rows = class_table(todd_class(X), X.dim());
    json doc;
    doc["command"] = "todd";
    doc["variety"] = job.variety;
    doc["components"] = rows;
    std::ostringstream human;
    human << "td(" << job.variety << "):\n" << class_table_human(rows);
    emit(job, doc, human.str());
    return 0;
}

int run_reports(const Job& job, const std::vector<Report>& reports, const std::string& command) {
    bool ok = true;
    json doc;
    doc["command"] = command;
    doc["reports"] = json::array();
    std::ostringstream human;
    for (auto& r : reports) {
        ok = ok && r.ok();
        doc["reports"].push_back(report_json(r));
        human << report_human(r);
    }
    human << (ok ? "identities hold\n" : "identity FAILURE\n");
    emit(job, doc, human.str());
    return ok ? 0 : 1;
}

int run_rr(const Job& job) {
    Variety X = parse_variety(job.variety);
    Sheaf E = parse_sheaf(X, job.sheaf);
    auto r = hrr_verify(E);
    json doc = json::parse(r.to_json());
    doc["command"] = "rr-verify";
    std::ostringstream human;
    human << "chi_cohomology = " << r.chi_cohomology.str() << "\nchi_rr = " << rat_str(r.chi_rr)
          << "\n"
          << (r.equal ? "equal\n" : "NOT EQUAL\n");
    emit(job, doc, human.str());
    return r.equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Job job;
    std::string config_path;
    std::vector<std::string> args(argv + 1, argv + argc);
    for (size_t i = 0; i < args.size(); ++i)
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                std::cerr << "--config needs a path\n";
                return 2;
            }
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
    std::string cfg_command;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config file " << config_path << "\n";
            return 2;
        }
        json cfg;
        try {
            in >> cfg;
        } catch (const std::exception& e) {
            std::cerr << "bad config: " << e.what() << "\n";
            return 2;
        }
        auto get = [&](const char* key, auto& slot) {
            if (cfg.contains(key))
                cfg.at(key).get_to(slot);
        };
        get("command", cfg_command);
        get("variety", job.variety);
        get("sheaf", job.sheaf);
        get("which", job.which);
        get("order", job.order);
        get("nvars", job.nvars);
        get("max_degree", job.max_degree);
        get("cap", job.cap);
        get("internal_min", job.internal_min);
        get("internal_max", job.internal_max);
        get("margin", job.margin);
        get("json", job.json_out);
    }

    CLI::App app{"hochrr: exact Cech/Hochschild Riemann-Roch toolkit"};
    app.require_subcommand(0, 1);
    std::map<std::string, std::function<int(const Job&)>> runners = {
        {"coefficients", run_coefficients},
        {"hh", run_hh},
        {"hkr-check", run_hkr_check},
        {"cohomology", run_cohomology},
        {"chern", run_chern},
        {"todd", run_todd},
        {"atiyah-check",
         [](const Job& j) {
             Variety X = parse_variety(j.variety);
             return run_reports(j, {verify_at_symmetry(X), verify_at_jacobi(X)}, "atiyah-check");
         }},
        {"todd-annihilation",
         [](const Job& j) {
             Variety X = parse_variety(j.variety);
             return run_reports(j, {verify_td_annihilation(X)}, "todd-annihilation");
         }},
        {"l-adjoint",
         [](const Job& j) {
             Variety X = parse_variety(j.variety);
             return run_reports(j, {verify_L_adjoint(X)}, "l-adjoint");
         }},
        {"rr-verify", run_rr},
    };
    for (auto& [name, fn] : runners) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--variety", job.variety, "variety spec, e.g. P2 or P1xP1");
        sub->add_option("--sheaf", job.sheaf, "sheaf expression, e.g. \"O(3)\" or \"dual(Omega^1)\"");
        sub->add_option("--which", job.which, "coefficient family: l or t");
        sub->add_option("--order", job.order, "truncation order");
        sub->add_option("--nvars", job.nvars, "number of affine variables");
        sub->add_option("--max-degree", job.max_degree, "top cochain degree");
        sub->add_option("--cap", job.cap, "internal degree cap");
        sub->add_option("--internal-min", job.internal_min, "lowest internal degree");
        sub->add_option("--internal-max", job.internal_max, "highest internal degree");
        sub->add_option("--margin", job.margin, "weight window margin");
        sub->add_flag("--json", job.json_out, "machine-readable JSON output");
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string command = cfg_command;
    auto subs = app.get_subcommands();
    if (!subs.empty())
        command = subs[0]->get_name();
    if (command.empty()) {
        std::cerr << "no command given (subcommand or \"command\" in --config)\n"
                  << app.help() << "\n";
        return 2;
    }
    auto it = runners.find(command);
    if (it == runners.end()) {
        std::cerr << "unknown command '" << command << "'\n";
        return 2;
    }
    try {
        return it->second(job);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const WindowOverflow& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
