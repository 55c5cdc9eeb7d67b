#include "rolldist/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rolldist/errors.hpp"

namespace rolldist {

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "isometry",      "rolling-identities", "flatness", "omjk",
        "omom",          "omprime",            "aom",      "dw2-oracle",
        "compatibility", "b1",                 "splitting", "exchange",
        "frobenius",     "holonomy",
    };
    return names;
}

double default_tolerance(const std::string& check) {
    if (check == "isometry") return 1e-10;
    if (check == "rolling-identities") return 1e-9;
    if (check == "flatness") return 1e-8;
    if (check == "omjk") return 1e-9;
    if (check == "omom") return 1e-8;
    if (check == "omprime") return 1e-8;
    if (check == "aom") return 1e-9;
    if (check == "dw2-oracle") return 1e-10;
    if (check == "compatibility") return 1e-10;
    if (check == "b1") return 1e-8;
    if (check == "splitting") return 1e-8;
    if (check == "exchange") return 1e-8;
    if (check == "frobenius") return 1e-8;
    if (check == "holonomy") return 1e-6;
    fail(ErrorKind::UnknownCheckName, "no such check: " + check);
}

namespace {

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t next = std::min({row[j] + 1, row[j - 1] + 1,
                                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = row[j];
            row[j] = next;
        }
    }
    return row[b.size()];
}

std::string nearest(const std::string& word, const std::vector<std::string>& options) {
    std::string best;
    std::size_t best_d = word.size() + 3;
    for (const auto& o : options) {
        std::size_t d = edit_distance(word, o);
        if (d < best_d) {
            best_d = d;
            best = o;
        }
    }
    return best_d <= 3 ? best : std::string();
}

std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ' ' || ch == '\t' || ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double parse_number(const std::string& word, int line_no) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(word, &used);
    } catch (const std::exception&) {
        fail(ErrorKind::ScenarioSyntaxError,
             "line " + std::to_string(line_no) + ": expected a number, got '" + word + "'");
    }
    if (used != word.size())
        fail(ErrorKind::ScenarioSyntaxError,
             "line " + std::to_string(line_no) + ": trailing characters in number '" + word + "'");
    return v;
}

SurfacePatch surface_from_words(const std::vector<std::string>& words, int line_no) {
    if (words.empty())
        fail(ErrorKind::ScenarioSyntaxError,
             "line " + std::to_string(line_no) + ": missing surface name");
    std::vector<double> params;
    for (std::size_t i = 1; i < words.size(); ++i)
        params.push_back(parse_number(words[i], line_no));
    return builtin_surface(words[0], params);
}

int grid_var(const std::string& suffix, int line_no) {
    if (suffix == "u") return 0;
    if (suffix == "v") return 1;
    if (suffix == "w1") return 2;
    if (suffix == "w2") return 3;
    fail(ErrorKind::ScenarioSyntaxError,
         "line " + std::to_string(line_no) + ": unknown grid variable '" + suffix + "'");
}

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& name) {
    Scenario s;
    s.name = name;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    std::array<std::string, 3> seed_comp{}, partner_comp{};
    bool has_seed_comp = false, has_partner_comp = false;
    std::array<std::string, 3> v_comp{};
    bool has_v = false;
    Bindings consts;

    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        if (!saw_header) {
            if (line != "rolldist-scenario v1")
                fail(ErrorKind::ScenarioSyntaxError,
                     name + ": first line must be 'rolldist-scenario v1'");
            saw_header = true;
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::ScenarioSyntaxError,
                 "line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& t) {
            auto a = t.find_first_not_of(" \t");
            auto b = t.find_last_not_of(" \t");
            t = (a == std::string::npos) ? std::string() : t.substr(a, b - a + 1);
        };
        trim(key);
        trim(value);
        if (value.empty())
            fail(ErrorKind::ScenarioSyntaxError,
                 "line " + std::to_string(line_no) + ": empty value for '" + key + "'");

        if (key == "seed") {
            s.seed_name = value;
            if (value.find(' ') == std::string::npos &&
                value.find('(') == std::string::npos) {
                // bare builtin, params handled below
            }
            s.seed = surface_from_words(split_words(value), line_no);
        } else if (key == "seed.x" || key == "seed.y" || key == "seed.z") {
            seed_comp[key.back() - 'x'] = value;
            has_seed_comp = true;
        } else if (key == "partner") {
            s.partner_name = value;
            if (value != "associate")
                s.partner = surface_from_words(split_words(value), line_no);
        } else if (key == "partner.x" || key == "partner.y" || key == "partner.z") {
            partner_comp[key.back() - 'x'] = value;
            has_partner_comp = true;
        } else if (key == "theta") {
            s.thetas.clear();
            for (const auto& w : split_words(value))
                s.thetas.push_back(parse_number(w, line_no));
        } else if (key.rfind("grid.", 0) == 0) {
            int var = grid_var(key.substr(5), line_no);
            auto words = split_words(value);
            if (words.size() != 3)
                fail(ErrorKind::ScenarioSyntaxError,
                     "line " + std::to_string(line_no) + ": grid needs 'lo hi count'");
            GridSpec g;
            g.lo = parse_number(words[0], line_no);
            g.hi = parse_number(words[1], line_no);
            g.count = static_cast<int>(parse_number(words[2], line_no));
            if (g.count < 1 || g.hi < g.lo)
                fail(ErrorKind::ScenarioSyntaxError,
                     "line " + std::to_string(line_no) + ": bad grid range");
            s.grid[var] = g;
        } else if (key == "checks") {
            s.checks = split_words(value);
            for (const auto& c : s.checks) {
                const auto& known = known_checks();
                if (std::find(known.begin(), known.end(), c) == known.end()) {
                    std::string hint = nearest(c, known);
                    std::string msg = "unknown check '" + c + "'";
                    if (!hint.empty()) msg += " (did you mean '" + hint + "'?)";
                    fail(ErrorKind::UnknownCheckName, msg);
                }
            }
        } else if (key == "V.x" || key == "V.y" || key == "V.z") {
            v_comp[key.back() - 'x'] = value;
            has_v = true;
        } else if (key == "m") {
            s.m_text = value;
        } else if (key.rfind("tol.", 0) == 0) {
            std::string check = key.substr(4);
            default_tolerance(check); // validates the name
            s.tol_overrides[check] = parse_number(value, line_no);
        } else if (key == "seed-rng") {
            s.rng_seed = static_cast<std::uint64_t>(parse_number(value, line_no));
        } else if (key == "complex-sampling") {
            if (value == "on")
                s.complex_sampling = true;
            else if (value == "off")
                s.complex_sampling = false;
            else
                fail(ErrorKind::ScenarioSyntaxError,
                     "line " + std::to_string(line_no) + ": complex-sampling must be on/off");
        } else if (key.rfind("const.", 0) == 0) {
            consts[key.substr(6)] = cplx(parse_number(value, line_no), 0.0);
        } else {
            fail(ErrorKind::ScenarioSyntaxError,
                 "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }

    if (!saw_header)
        fail(ErrorKind::ScenarioSyntaxError, name + ": empty scenario file");
    if (has_seed_comp) {
        for (int k = 0; k < 3; ++k)
            if (seed_comp[k].empty())
                fail(ErrorKind::ScenarioSyntaxError, "seed.x/.y/.z must all be given");
        s.seed = SurfacePatch{};
        for (int k = 0; k < 3; ++k) s.seed.comp[k] = parse(seed_comp[k]);
        s.seed.consts = consts;
        if (s.seed_name.empty()) s.seed_name = "custom";
    }
    if (has_partner_comp) {
        for (int k = 0; k < 3; ++k)
            if (partner_comp[k].empty())
                fail(ErrorKind::ScenarioSyntaxError, "partner.x/.y/.z must all be given");
        SurfacePatch p;
        for (int k = 0; k < 3; ++k) p.comp[k] = parse(partner_comp[k]);
        p.consts = consts;
        s.partner = p;
        if (s.partner_name.empty()) s.partner_name = "custom";
    }
    if (!s.seed.comp[0])
        fail(ErrorKind::ScenarioSyntaxError, name + ": no seed surface given");
    if (has_v) {
        for (int k = 0; k < 3; ++k)
            if (v_comp[k].empty())
                fail(ErrorKind::ScenarioSyntaxError, "V.x/.y/.z must all be given");
        s.v_text = v_comp;
    }
    if (s.partner_name == "associate" && s.thetas.empty())
        s.thetas = {0.3, 0.7, 1.1, 1.5};
    if (s.checks.empty())
        fail(ErrorKind::ScenarioSyntaxError, name + ": no checks requested");
    // merge consts into the seed as well when it was a builtin
    if (!consts.empty())
        for (auto& [k, v] : consts) s.seed.consts.emplace(k, v);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::FileError, "cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

} // namespace rolldist
