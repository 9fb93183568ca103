#include "ftflow/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ftflow/validate.hpp"

namespace ftflow {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

std::string ident(const std::string& s) {
    if (!is_ident(s)) throw std::invalid_argument("bad identifier '" + s + "'");
    return s;
}

int parse_int(const std::string& s) {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s) {
    if (s == "yes" || s == "true") return true;
    if (s == "no" || s == "false") return false;
    throw std::invalid_argument("bad boolean '" + s + "'");
}

Side parse_side(const std::string& s) {
    if (s == "L") return Side::L;
    if (s == "R") return Side::R;
    throw std::invalid_argument("bad side '" + s + "'");
}

bool parse_sense(const std::string& s) {
    if (s == "+") return true;
    if (s == "-") return false;
    throw std::invalid_argument("bad sense '" + s + "'");
}

Attachment parse_attachment(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return {ident(s), -1};
    int side = parse_int(s.substr(dot + 1));
    if (side > 1) throw std::invalid_argument("bad cycle side in '" + s + "'");
    return {ident(s.substr(0, dot)), side};
}

std::string format_attachment(const Attachment& a) {
    return a.is_cycle() ? a.id + "." + std::to_string(a.cycle_side) : a.id;
}

const char* side_str(Side s) { return s == Side::L ? "L" : "R"; }
const char* sense_str(bool f) { return f ? "+" : "-"; }

std::vector<CycleEnd> parse_cycle_ends(const std::string& s) {
    std::vector<CycleEnd> out;
    if (s.empty()) return out;
    for (const auto& tok : split(s, ',')) {
        auto parts = split(tok, ':');
        if (parts.size() != 2) throw std::invalid_argument("bad cycle end '" + tok + "'");
        out.push_back({ident(parts[0]), parse_side(parts[1])});
    }
    return out;
}

std::string format_cycle_ends(const std::vector<CycleEnd>& ends) {
    std::string out;
    for (size_t i = 0; i < ends.size(); ++i) {
        if (i) out += ",";
        out += ends[i].sep + ":" + side_str(ends[i].downstream);
    }
    return out;
}

using Record = std::map<std::string, std::string>;

const std::string& need(const Record& r, const std::string& key) {
    auto it = r.find(key);
    if (it == r.end()) throw std::invalid_argument("missing field '" + key + "'");
    return it->second;
}

std::string opt(const Record& r, const std::string& key, const std::string& dflt = "") {
    auto it = r.find(key);
    return it == r.end() ? dflt : it->second;
}

void parse_record(FlowModel& m, const std::string& section, const Record& r) {
    if (section == "surface") {
        m.surface.orientable = parse_bool(need(r, "orientable"));
        m.surface.genus = parse_int(need(r, "genus"));
        m.surface.boundary = parse_int(opt(r, "boundary", "0"));
    } else if (section == "points") {
        SingularPoint p;
        p.id = ident(need(r, "id"));
        auto k = point_kind_from(need(r, "kind"));
        if (!k) throw std::invalid_argument("unknown kind '" + need(r, "kind") + "'");
        p.kind = *k;
        if (p.kind == PointKind::Saddle) p.mult = parse_int(need(r, "k"));
        if (p.kind == PointKind::BSaddle) p.mult = parse_int(need(r, "m"));
        m.points.push_back(p);
    } else if (section == "seps") {
        Separatrix s;
        s.id = ident(need(r, "id"));
        s.tail = parse_attachment(need(r, "tail"));
        s.head = parse_attachment(need(r, "head"));
        const auto& c = need(r, "cls");
        if (c == "ms") s.cls = SepClass::MultiSaddle;
        else if (c == "ss") s.cls = SepClass::SsSep;
        else throw std::invalid_argument("unknown separatrix class '" + c + "'");
        m.seps.push_back(s);
    } else if (section == "cycles") {
        LimitCycle c;
        c.id = ident(need(r, "id"));
        const auto& sided = need(r, "sided");
        if (sided == "two") c.two_sided = true;
        else if (sided == "one") c.two_sided = false;
        else throw std::invalid_argument("bad sidedness '" + sided + "'");
        for (int i = 0; i < (c.two_sided ? 2 : 1); ++i) {
            CycleSide side;
            auto role = cycle_role_from(need(r, "side" + std::to_string(i)));
            if (!role) throw std::invalid_argument("unknown cycle role");
            side.role = *role;
            side.ends = parse_cycle_ends(opt(r, "ends" + std::to_string(i)));
            c.sides.push_back(side);
        }
        m.cycles.push_back(c);
    } else if (section == "boundary") {
        BoundaryCircle b;
        b.id = ident(need(r, "id"));
        const auto& k = need(r, "kind");
        if (k == "periodic") b.kind = BoundaryKind::Periodic;
        else if (k == "diagram") {
            b.kind = BoundaryKind::Diagram;
            b.walk = parse_walk(need(r, "walk"));
            if (b.walk.is_atom()) throw std::invalid_argument("diagram boundary walk cannot be an atom");
        } else throw std::invalid_argument("unknown boundary kind '" + k + "'");
        m.boundary.push_back(b);
    } else if (section == "rotations") {
        Rotation rot;
        rot.point = ident(need(r, "point"));
        const auto& order = need(r, "order");
        if (!order.empty()) {
            for (const auto& tok : split(order, ',')) {
                auto parts = split(tok, ':');
                if (parts.size() != 2 || (parts[1] != "t" && parts[1] != "h"))
                    throw std::invalid_argument("bad rotation entry '" + tok + "'");
                rot.order.push_back({ident(parts[0]), parts[1] == "t" ? End::Tail : End::Head});
            }
        }
        m.rotations.push_back(rot);
    } else if (section == "pieces") {
        Piece p;
        p.id = ident(need(r, "id"));
        auto l = piece_label_from(need(r, "label"));
        if (!l) throw std::invalid_argument("unknown label '" + need(r, "label") + "'");
        p.label = *l;
        auto walks = opt(r, "walks");
        if (!walks.empty())
            for (const auto& w : split(walks, '|')) p.walks.push_back(parse_walk(w));
        if (r.count("ld")) {
            auto parts = split(need(r, "ld"), ':');
            if (parts.size() != 3) throw std::invalid_argument("bad ld record");
            p.ld = LdRecord{parse_bool(parts[0]), parse_int(parts[1]), parse_int(parts[2])};
        }
        m.pieces.push_back(p);
    } else {
        throw std::invalid_argument("record outside a known section");
    }
}

}  // namespace

Walk parse_walk(const std::string& s) {
    Walk w;
    if (s.empty()) throw std::invalid_argument("empty walk");
    if (s[0] == '@') {
        auto parts = split(s.substr(1), ':');
        Atom a;
        if (parts[0] == "point" && parts.size() == 2) {
            a.kind = AtomKind::Point;
            a.id = ident(parts[1]);
        } else if (parts[0] == "cycle" && parts.size() == 3) {
            auto at = parse_attachment(parts[1]);
            if (!at.is_cycle()) throw std::invalid_argument("cycle atom needs a side");
            a.kind = AtomKind::CycleSide;
            a.id = at.id;
            a.side = at.cycle_side;
            a.forward = parse_sense(parts[2]);
        } else if (parts[0] == "boundary" && parts.size() == 3) {
            a.kind = AtomKind::Boundary;
            a.id = ident(parts[1]);
            a.forward = parse_sense(parts[2]);
        } else {
            throw std::invalid_argument("bad atom '" + s + "'");
        }
        w.atom = a;
        return w;
    }
    for (const auto& tok : split(s, ',')) {
        auto parts = split(tok, ':');
        if (parts.size() != 3) throw std::invalid_argument("bad segment '" + tok + "'");
        w.segs.push_back({ident(parts[0]), parse_side(parts[1]), parse_sense(parts[2])});
    }
    return w;
}

std::string format_walk(const Walk& w) {
    if (w.atom) {
        const auto& a = *w.atom;
        switch (a.kind) {
            case AtomKind::Point: return "@point:" + a.id;
            case AtomKind::CycleSide:
                return "@cycle:" + a.id + "." + std::to_string(a.side) + ":" + sense_str(a.forward);
            case AtomKind::Boundary: return "@boundary:" + a.id + ":" + sense_str(a.forward);
        }
    }
    std::string out;
    for (size_t i = 0; i < w.segs.size(); ++i) {
        if (i) out += ",";
        out += w.segs[i].sep + ":" + side_str(w.segs[i].side) + ":" + sense_str(w.segs[i].forward);
    }
    return out;
}

FlowModel parse_model_unchecked(const std::string& text) {
    static const std::vector<std::string> sections = {"surface", "points", "seps", "cycles",
                                                      "boundary", "rotations", "pieces"};
    FlowModel m;
    std::istringstream in(text);
    std::string line, section;
    bool saw_surface = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks[0].front() == '[') {
            if (toks.size() != 1 || toks[0].back() != ']')
                throw ModelError(ViolationCode::SyntaxError, "line " + std::to_string(lineno) + ": bad section header", lineno);
            section = toks[0].substr(1, toks[0].size() - 2);
            if (std::find(sections.begin(), sections.end(), section) == sections.end())
                throw ModelError(ViolationCode::SyntaxError,
                                 "line " + std::to_string(lineno) + ": unknown section '" + section + "'", lineno);
            continue;
        }
        Record r;
        try {
            for (const auto& t : toks) {
                auto eq = t.find('=');
                if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got '" + t + "'");
                if (!r.emplace(t.substr(0, eq), t.substr(eq + 1)).second)
                    throw std::invalid_argument("duplicate key '" + t.substr(0, eq) + "'");
            }
            if (section == "surface") {
                if (saw_surface) throw std::invalid_argument("second surface record");
                saw_surface = true;
            }
            parse_record(m, section, r);
        } catch (const std::invalid_argument& e) {
            throw ModelError(ViolationCode::SyntaxError, "line " + std::to_string(lineno) + ": " + e.what(), lineno);
        } catch (const std::out_of_range& e) {
            throw ModelError(ViolationCode::SyntaxError, "line " + std::to_string(lineno) + ": number out of range", lineno);
        }
    }
    if (!saw_surface) throw ModelError(ViolationCode::SyntaxError, "missing surface record", lineno);
    return m;
}

FlowModel parse_model(const std::string& text) {
    FlowModel m = parse_model_unchecked(text);
    require_valid(m);
    return m;
}

std::string serialize_model(const FlowModel& model) {
    FlowModel m = model;
    m.normalize();
    std::ostringstream out;
    out << "[surface]\n";
    out << "orientable=" << (m.surface.orientable ? "yes" : "no") << " genus=" << m.surface.genus
        << " boundary=" << m.surface.boundary << "\n";
    out << "\n[points]\n";
    for (const auto& p : m.points) {
        out << "id=" << p.id << " kind=" << to_string(p.kind);
        if (p.kind == PointKind::Saddle) out << " k=" << p.mult;
        if (p.kind == PointKind::BSaddle) out << " m=" << p.mult;
        out << "\n";
    }
    out << "\n[seps]\n";
    for (const auto& s : m.seps)
        out << "id=" << s.id << " tail=" << format_attachment(s.tail) << " head=" << format_attachment(s.head)
            << " cls=" << to_string(s.cls) << "\n";
    out << "\n[cycles]\n";
    for (const auto& c : m.cycles) {
        out << "id=" << c.id << " sided=" << (c.two_sided ? "two" : "one");
        for (size_t i = 0; i < c.sides.size(); ++i)
            out << " side" << i << "=" << to_string(c.sides[i].role) << " ends" << i << "="
                << format_cycle_ends(c.sides[i].ends);
        out << "\n";
    }
    out << "\n[boundary]\n";
    for (const auto& b : m.boundary) {
        out << "id=" << b.id << " kind=" << (b.kind == BoundaryKind::Periodic ? "periodic" : "diagram");
        if (b.kind == BoundaryKind::Diagram) out << " walk=" << format_walk(b.walk);
        out << "\n";
    }
    out << "\n[rotations]\n";
    for (const auto& r : m.rotations) {
        out << "point=" << r.point << " order=";
        for (size_t i = 0; i < r.order.size(); ++i)
            out << (i ? "," : "") << r.order[i].sep << ":" << (r.order[i].end == End::Tail ? "t" : "h");
        out << "\n";
    }
    out << "\n[pieces]\n";
    for (const auto& p : m.pieces) {
        out << "id=" << p.id << " label=" << to_string(p.label);
        if (!p.walks.empty()) {
            out << " walks=";
            for (size_t i = 0; i < p.walks.size(); ++i) out << (i ? "|" : "") << format_walk(p.walks[i]);
        }
        if (p.ld)
            out << " ld=" << (p.ld->orientable ? "yes" : "no") << ":" << p.ld->genus << ":" << p.ld->punctures;
        out << "\n";
    }
    return out.str();
}

FlowModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

}  // namespace ftflow
