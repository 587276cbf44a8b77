#include "carpentry/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "carpentry/libraries.hpp"

namespace carpentry {

std::string format_number(double v)
{
    if (v == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

Json read_json(const std::filesystem::path& path)
{
    const auto text = read_text(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

namespace {

void check_object(const Json& j, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!j.is_object()) throw InputError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            throw InputError(where + ": unknown field '" + key + "'");
        }
    }
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    return j.at(key);
}

std::string get_string(const Json& j, const char* key, const std::string& where)
{
    const auto& v = field(j, key, where);
    if (!v.is_string()) throw InputError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

double get_number(const Json& j, const char* key, const std::string& where)
{
    const auto& v = field(j, key, where);
    if (!v.is_number()) throw InputError(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

Length to_length(const Json& v, const std::string& where)
{
    if (!v.is_number()) throw InputError(where + ": length must be a number of inches");
    try {
        return Length::from_inches(v.get<double>());
    } catch (const std::invalid_argument&) {
        throw InputError(where + ": length " + v.dump() + " is not a multiple of 1/64 inch");
    }
}

Length get_length(const Json& j, const char* key, const std::string& where)
{
    return to_length(field(j, key, where), where + "." + key);
}

Length opt_length(const Json& j, const char* key, const std::string& where)
{
    return j.contains(key) ? get_length(j, key, where) : Length{};
}

Axis axis_from(const std::string& s, const std::string& where)
{
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    throw InputError(where + ": axis must be \"x\" or \"y\"");
}

const char* axis_name(Axis a)
{
    return a == Axis::X ? "x" : "y";
}

Json length_json(Length l)
{
    return l.inches();
}

Json part_json(const Part& p)
{
    Json j;
    j["id"] = p.id;
    j["family"] = p.family;
    j["length"] = length_json(p.shape.x);
    if (p.shape.is_sheet()) j["width"] = length_json(p.shape.y);
    j["material"] = to_string(p.material);
    return j;
}

Json number_or_null(const std::optional<double>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

} // namespace

DesignSpace design_space_from_json(const Json& j)
{
    check_object(j, {"id", "parts", "joints"}, "design");
    const std::string id = get_string(j, "id", "design");
    std::vector<Part> parts;
    const auto& jp = field(j, "parts", "design");
    if (!jp.is_array()) throw InputError("design: parts must be an array");
    for (std::size_t i = 0; i < jp.size(); ++i) {
        const std::string where = "design.parts[" + std::to_string(i) + "]";
        check_object(jp[i], {"id", "family", "length", "width", "material"}, where);
        Part p;
        p.id = get_string(jp[i], "id", where);
        p.family = get_string(jp[i], "family", where);
        p.shape = Extent{get_length(jp[i], "length", where), opt_length(jp[i], "width", where)};
        if (jp[i].contains("material")) p.material = material_from_string(get_string(jp[i], "material", where));
        parts.push_back(std::move(p));
    }
    std::vector<Adjacency> adjacency;
    if (j.contains("joints")) {
        const auto& jj = j.at("joints");
        if (!jj.is_array()) throw InputError("design: joints must be an array");
        for (std::size_t i = 0; i < jj.size(); ++i) {
            const std::string where = "design.joints[" + std::to_string(i) + "]";
            check_object(jj[i], {"id", "parts", "variants"}, where);
            const auto& pair = field(jj[i], "parts", where);
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
                throw InputError(where + ": parts must be two part ids");
            }
            Adjacency a;
            a.joint_id = get_string(jj[i], "id", where);
            a.part_a = pair[0].get<std::string>();
            a.part_b = pair[1].get<std::string>();
            const auto& vs = field(jj[i], "variants", where);
            if (!vs.is_array()) throw InputError(where + ": variants must be an array");
            for (std::size_t k = 0; k < vs.size(); ++k) {
                const std::string vw = where + ".variants[" + std::to_string(k) + "]";
                check_object(vs[k], {"id", "delta_a", "delta_b", "axis_a", "axis_b"}, vw);
                ConnectorVariant v;
                v.id = get_string(vs[k], "id", vw);
                v.delta_a = opt_length(vs[k], "delta_a", vw);
                v.delta_b = opt_length(vs[k], "delta_b", vw);
                if (vs[k].contains("axis_a")) v.axis_a = axis_from(get_string(vs[k], "axis_a", vw), vw);
                if (vs[k].contains("axis_b")) v.axis_b = axis_from(get_string(vs[k], "axis_b", vw), vw);
                a.variants.push_back(std::move(v));
            }
            adjacency.push_back(std::move(a));
        }
    }
    auto joints = detect_joints(parts, adjacency);
    return DesignSpace(id, std::move(parts), std::move(joints));
}

Json design_space_to_json(const DesignSpace& space)
{
    Json j;
    j["id"] = space.id();
    j["parts"] = Json::array();
    for (const auto& p : space.base_parts()) j["parts"].push_back(part_json(p));
    j["joints"] = Json::array();
    for (const auto& joint : space.joints()) {
        Json jj;
        jj["id"] = joint.id;
        jj["parts"] = Json::array({joint.part_a, joint.part_b});
        jj["variants"] = Json::array();
        for (const auto& v : joint.variants) {
            jj["variants"].push_back(Json{{"id", v.id},
                                          {"delta_a", length_json(v.delta_a)},
                                          {"delta_b", length_json(v.delta_b)},
                                          {"axis_a", axis_name(v.axis_a)},
                                          {"axis_b", axis_name(v.axis_b)}});
        }
        j["joints"].push_back(std::move(jj));
    }
    return j;
}

Json design_to_json(const Design& design)
{
    Json j;
    j["id"] = design.id;
    j["parts"] = Json::array();
    for (const auto& p : design.parts) j["parts"].push_back(part_json(p));
    j["variants"] = Json::object();
    for (const auto& [joint, variant] : design.provenance) j["variants"][joint] = variant;
    return j;
}

Libraries libraries_from_json(const Json& j)
{
    check_object(j, {"stocks", "tools"}, "library");
    Libraries libs = default_libraries();
    if (j.contains("stocks")) {
        const auto& js = j.at("stocks");
        if (!js.is_array()) throw InputError("library: stocks must be an array");
        libs.stocks.clear();
        std::set<std::string> ids;
        for (std::size_t i = 0; i < js.size(); ++i) {
            const std::string where = "library.stocks[" + std::to_string(i) + "]";
            check_object(js[i],
                         {"id", "family", "length", "width", "price", "load_full", "load_partial", "unload_full",
                          "unload_partial", "material"},
                         where);
            StockSpec s;
            s.id = get_string(js[i], "id", where);
            if (!ids.insert(s.id).second) throw InputError(where + ": duplicate stock id '" + s.id + "'");
            s.family = get_string(js[i], "family", where);
            s.dims = Extent{get_length(js[i], "length", where), opt_length(js[i], "width", where)};
            if (s.dims.x.ticks <= 0) throw InputError(where + ": length must be positive");
            s.price = get_number(js[i], "price", where);
            s.load_full = get_number(js[i], "load_full", where);
            s.load_partial = get_number(js[i], "load_partial", where);
            s.unload_full = get_number(js[i], "unload_full", where);
            s.unload_partial = get_number(js[i], "unload_partial", where);
            if (js[i].contains("material")) s.material = material_from_string(get_string(js[i], "material", where));
            if (s.price < 0 || s.load_full < 0 || s.load_partial < 0 || s.unload_full < 0 || s.unload_partial < 0) {
                throw InputError(where + ": prices and times must be non-negative");
            }
            libs.stocks.push_back(std::move(s));
        }
    }
    if (j.contains("tools")) {
        const auto& jt = j.at("tools");
        if (!jt.is_array()) throw InputError("library: tools must be an array");
        for (std::size_t i = 0; i < jt.size(); ++i) {
            const std::string where = "library.tools[" + std::to_string(i) + "]";
            check_object(jt[i],
                         {"id", "setup_full_lumber", "setup_full_sheet", "setup_partial", "op_rate", "op_error",
                          "kerf", "stackable"},
                         where);
            ToolSpec t;
            t.id = tool_from_string(get_string(jt[i], "id", where));
            t.setup_full_lumber = get_number(jt[i], "setup_full_lumber", where);
            t.setup_full_sheet = get_number(jt[i], "setup_full_sheet", where);
            if (jt[i].contains("setup_partial") && !jt[i].at("setup_partial").is_null()) {
                t.setup_partial = get_number(jt[i], "setup_partial", where);
            }
            const auto& rate = field(jt[i], "op_rate", where);
            check_object(rate, {"seconds_per_cut", "inches_per_second", "depth_inches_per_second"}, where + ".op_rate");
            if (rate.size() != 1) throw InputError(where + ".op_rate: exactly one rate is required");
            if (rate.contains("seconds_per_cut")) {
                t.op_rate = PerCut{get_number(rate, "seconds_per_cut", where)};
            } else if (rate.contains("inches_per_second")) {
                t.op_rate = PerInch{get_number(rate, "inches_per_second", where)};
            } else {
                t.op_rate = PerDepthInch{get_number(rate, "depth_inches_per_second", where)};
            }
            t.op_error = get_length(jt[i], "op_error", where);
            t.kerf = get_length(jt[i], "kerf", where);
            const auto& st = field(jt[i], "stackable", where);
            if (!st.is_boolean()) throw InputError(where + ": stackable must be a boolean");
            t.stackable = st.get<bool>();
            auto it = std::find_if(libs.tools.begin(), libs.tools.end(), [&](const ToolSpec& x) { return x.id == t.id; });
            *it = t;
        }
    }
    return libs;
}

Json libraries_to_json(const Libraries& libs)
{
    Json j;
    j["stocks"] = Json::array();
    for (const auto& s : libs.stocks) {
        Json js;
        js["id"] = s.id;
        js["family"] = s.family;
        js["length"] = length_json(s.dims.x);
        if (s.is_sheet()) js["width"] = length_json(s.dims.y);
        js["price"] = s.price;
        js["load_full"] = s.load_full;
        js["load_partial"] = s.load_partial;
        js["unload_full"] = s.unload_full;
        js["unload_partial"] = s.unload_partial;
        js["material"] = to_string(s.material);
        j["stocks"].push_back(std::move(js));
    }
    j["tools"] = Json::array();
    for (const auto& t : libs.tools) {
        Json jt;
        jt["id"] = to_string(t.id);
        jt["setup_full_lumber"] = t.setup_full_lumber;
        jt["setup_full_sheet"] = t.setup_full_sheet;
        jt["setup_partial"] = number_or_null(t.setup_partial);
        jt["op_rate"] = std::visit(
            [](const auto& r) -> Json {
                using R = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<R, PerCut>) return Json{{"seconds_per_cut", r.seconds}};
                else if constexpr (std::is_same_v<R, PerInch>) return Json{{"inches_per_second", r.inches_per_second}};
                else return Json{{"depth_inches_per_second", r.inches_per_second}};
            },
            t.op_rate);
        jt["op_error"] = length_json(t.op_error);
        jt["kerf"] = length_json(t.kerf);
        jt["stackable"] = t.stackable;
        j["tools"].push_back(std::move(jt));
    }
    return j;
}

FabPlan plan_from_json(const Json& j, const Libraries& libs)
{
    check_object(j, {"design_id", "stocks", "cuts"}, "plan");
    FabPlan plan;
    if (j.contains("design_id")) plan.design_id = get_string(j, "design_id", "plan");
    const auto& js = field(j, "stocks", "plan");
    if (!js.is_array()) throw InputError("plan: stocks must be an array");
    for (std::size_t i = 0; i < js.size(); ++i) {
        const std::string where = "plan.stocks[" + std::to_string(i) + "]";
        check_object(js[i], {"stock", "parts"}, where);
        PlanStock s;
        s.stock_id = get_string(js[i], "stock", where);
        if (!libs.find_stock(s.stock_id)) throw PlanError(where + ": unknown stock '" + s.stock_id + "'");
        if (js[i].contains("parts")) {
            const auto& jp = js[i].at("parts");
            if (!jp.is_array()) throw InputError(where + ": parts must be an array");
            for (std::size_t k = 0; k < jp.size(); ++k) {
                const std::string pw = where + ".parts[" + std::to_string(k) + "]";
                check_object(jp[k], {"id", "x", "y", "length", "width"}, pw);
                PlacedPart p;
                p.part_id = get_string(jp[k], "id", pw);
                p.x = opt_length(jp[k], "x", pw);
                p.y = opt_length(jp[k], "y", pw);
                p.extent = Extent{get_length(jp[k], "length", pw), opt_length(jp[k], "width", pw)};
                s.placements.push_back(std::move(p));
            }
        }
        plan.stocks.push_back(std::move(s));
    }
    if (j.contains("cuts")) {
        const auto& jc = j.at("cuts");
        if (!jc.is_array()) throw InputError("plan: cuts must be an array");
        for (std::size_t i = 0; i < jc.size(); ++i) {
            const std::string where = "plan.cuts[" + std::to_string(i) + "]";
            try {
                check_object(jc[i], {"tool", "stock", "axis", "at", "span", "depth", "measured", "angle", "stack_group"},
                             where);
                Cut c;
                c.tool = tool_from_string(get_string(jc[i], "tool", where));
                const auto& st = field(jc[i], "stock", where);
                if (!st.is_number_unsigned()) throw InputError(where + ": stock must be a stock index");
                c.stock = st.get<std::size_t>();
                if (c.stock >= plan.stocks.size()) throw InputError(where + ": stock index out of range");
                c.line.axis = jc[i].contains("axis") ? axis_from(get_string(jc[i], "axis", where), where) : Axis::X;
                c.line.at = get_length(jc[i], "at", where);
                const auto& dims = libs.stock(plan.stocks[c.stock].stock_id).dims;
                if (jc[i].contains("span")) {
                    const auto& sp = jc[i].at("span");
                    if (!sp.is_array() || sp.size() != 2) throw InputError(where + ": span must be [begin, end]");
                    c.line.span_begin = to_length(sp[0], where + ".span");
                    c.line.span_end = to_length(sp[1], where + ".span");
                } else {
                    c.line.span_end = c.line.axis == Axis::X ? dims.y : dims.x;
                }
                if (jc[i].contains("depth")) c.depth = get_length(jc[i], "depth", where);
                if (jc[i].contains("measured")) c.measured = get_length(jc[i], "measured", where);
                if (jc[i].contains("angle")) {
                    const auto& a = jc[i].at("angle");
                    if (!a.is_number_integer()) throw InputError(where + ": angle must be an integer");
                    c.angle = a.get<int>();
                }
                if (jc[i].contains("stack_group")) c.stack_group = get_string(jc[i], "stack_group", where);
                plan.cuts.push_back(std::move(c));
            } catch (const PlanError&) {
                throw;
            } catch (const InputError& e) {
                throw PlanError(e.what(), i);
            }
        }
    }
    return plan;
}

Json plan_to_json(const FabPlan& plan)
{
    Json j;
    j["design_id"] = plan.design_id;
    j["stocks"] = Json::array();
    for (const auto& s : plan.stocks) {
        Json js;
        js["stock"] = s.stock_id;
        js["parts"] = Json::array();
        for (const auto& p : s.placements) {
            Json jp;
            jp["id"] = p.part_id;
            jp["x"] = length_json(p.x);
            jp["y"] = length_json(p.y);
            jp["length"] = length_json(p.extent.x);
            if (p.extent.is_sheet()) jp["width"] = length_json(p.extent.y);
            js["parts"].push_back(std::move(jp));
        }
        j["stocks"].push_back(std::move(js));
    }
    j["cuts"] = Json::array();
    for (const auto& c : plan.cuts) {
        Json jc;
        jc["tool"] = to_string(c.tool);
        jc["stock"] = c.stock;
        jc["axis"] = axis_name(c.line.axis);
        jc["at"] = length_json(c.line.at);
        jc["span"] = Json::array({length_json(c.line.span_begin), length_json(c.line.span_end)});
        if (c.depth) jc["depth"] = length_json(*c.depth);
        if (c.measured) jc["measured"] = length_json(*c.measured);
        if (c.angle != 0) jc["angle"] = c.angle;
        if (c.stack_group) jc["stack_group"] = *c.stack_group;
        j["cuts"].push_back(std::move(jc));
    }
    return j;
}

std::vector<FrontRow> front_rows(const std::vector<Solution>& front)
{
    std::vector<FrontRow> rows;
    for (const auto& s : front) rows.push_back(FrontRow{s.design.id, s.plan_id, s.cost});
    return rows;
}

std::string front_to_csv(const std::vector<FrontRow>& rows)
{
    std::string out = "design_id,plan_id,f_c,f_p,f_t\n";
    for (const auto& r : rows) {
        out += r.design_id + "," + r.plan_id + "," + format_number(r.cost.material) + "," +
               (r.cost.precision ? format_number(*r.cost.precision) : "") + "," + format_number(r.cost.time) + "\n";
    }
    return out;
}

namespace {

double parse_double(const std::string& s, std::size_t line)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw InputError("front line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

} // namespace

std::vector<FrontRow> front_from_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "design_id,plan_id,f_c,f_p,f_t") {
        throw InputError("front line 1: expected header design_id,plan_id,f_c,f_p,f_t");
    }
    std::vector<FrontRow> rows;
    std::optional<ObjectiveMode> mode;
    std::size_t n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::string col;
        std::istringstream ls(line);
        while (std::getline(ls, col, ',')) cols.push_back(col);
        if (!line.empty() && line.back() == ',') cols.emplace_back();
        if (cols.size() != 5) throw InputError("front line " + std::to_string(n) + ": expected 5 columns");
        FrontRow r;
        r.design_id = cols[0];
        r.plan_id = cols[1];
        r.cost.material = parse_double(cols[2], n);
        if (!cols[3].empty()) r.cost.precision = parse_double(cols[3], n);
        r.cost.time = parse_double(cols[4], n);
        if (mode && *mode != r.cost.mode()) throw InputError("front line " + std::to_string(n) + ": mixed objective modes");
        mode = r.cost.mode();
        rows.push_back(std::move(r));
    }
    return rows;
}

Json front_to_json(const std::vector<Solution>& front)
{
    Json j = Json::array();
    for (const auto& s : front) {
        Json e;
        e["design_id"] = s.design.id;
        e["plan_id"] = s.plan_id;
        e["f_c"] = s.cost.material;
        e["f_p"] = number_or_null(s.cost.precision);
        e["f_t"] = s.cost.time;
        e["design"] = design_to_json(s.design);
        e["plan"] = plan_to_json(s.plan);
        j.push_back(std::move(e));
    }
    return j;
}

Json report_to_json(const RunReport& report)
{
    const auto& p = report.params;
    Json j;
    j["mode"] = report.baseline ? "baseline" : "icee";
    j["params"] = Json{{"T", p.T},
                       {"n", p.n},
                       {"P", p.P},
                       {"population", p.population},
                       {"p_c", p.p_c},
                       {"p_m", p.p_m},
                       {"t", p.t},
                       {"alpha", p.alpha},
                       {"iterations", p.iterations},
                       {"generations", p.generations},
                       {"designs_per_iteration", p.designs_per_iteration},
                       {"objectives", static_cast<int>(p.mode)},
                       {"seed", p.seed}};
    j["reference_point"] = p.reference_point().coords;
    j["design_space_size"] = report.design_space_size;
    j["explored_designs"] = report.explored_designs;
    j["iterations"] = Json::array();
    for (const auto& r : report.iterations) {
        j["iterations"].push_back(Json{{"iteration", r.iteration},
                                       {"designs", r.designs},
                                       {"arrangements", r.arrangements},
                                       {"new_nodes", r.new_nodes},
                                       {"classes", r.classes},
                                       {"nodes", r.nodes},
                                       {"terms", r.terms},
                                       {"evaluations", r.evaluations},
                                       {"pruned", r.pruned},
                                       {"front_size", r.front_size},
                                       {"hypervolume", r.hypervolume}});
    }
    j["hypervolume"] = report.hypervolume;
    j["front"] = Json::array();
    for (const auto& s : report.front) {
        j["front"].push_back(Json{{"design_id", s.design.id},
                                  {"plan_id", s.plan_id},
                                  {"f_c", s.cost.material},
                                  {"f_p", number_or_null(s.cost.precision)},
                                  {"f_t", s.cost.time}});
    }
    j["warnings"] = report.warnings;
    return j;
}

std::string front_to_svg(const std::vector<FrontRow>& rows)
{
    constexpr double W = 640, H = 480, L = 70, R = 190, T = 30, B = 60;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!rows.empty()) {
        x0 = x1 = rows.front().cost.material;
        y0 = y1 = rows.front().cost.time;
        for (const auto& r : rows) {
            x0 = std::min(x0, r.cost.material);
            x1 = std::max(x1, r.cost.material);
            y0 = std::min(y0, r.cost.time);
            y1 = std::max(y1, r.cost.time);
        }
    }
    const double pad_x = x1 > x0 ? (x1 - x0) * 0.1 : 1.0;
    const double pad_y = y1 > y0 ? (y1 - y0) * 0.1 : 1.0;
    x0 -= pad_x;
    x1 += pad_x;
    y0 -= pad_y;
    y1 += pad_y;
    const auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
    const auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };
    const auto num = [](double v) { return format_number(std::round(v * 100.0) / 100.0); };

    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    std::map<std::string, std::size_t> series;
    for (const auto& r : rows) series.emplace(r.design_id, 0);
    std::size_t k = 0;
    for (auto& [id, idx] : series) idx = k++;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
       << "material cost f_c ($)</text>\n";
    os << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
       << (T + H - B) / 2 << ")\">time f_t (min)</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double vx = x0 + (x1 - x0) * i / 4.0;
        const double vy = y0 + (y1 - y0) * i / 4.0;
        os << "<text x=\"" << num(px(vx)) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\" font-size=\"10\">"
           << num(vx) << "</text>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << num(py(vy) + 3) << "\" text-anchor=\"end\" font-size=\"10\">"
           << num(vy) << "</text>\n";
    }
    for (const auto& r : rows) {
        os << "<circle cx=\"" << num(px(r.cost.material)) << "\" cy=\"" << num(py(r.cost.time)) << "\" r=\"4\" fill=\""
           << palette[series.at(r.design_id) % 10] << "\"><title>" << r.design_id << ' ' << r.plan_id
           << "</title></circle>\n";
    }
    for (const auto& [id, idx] : series) {
        const double y = T + 10 + 16.0 * static_cast<double>(idx);
        os << "<circle cx=\"" << W - R + 15 << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << palette[idx % 10] << "\"/>\n";
        os << "<text x=\"" << W - R + 25 << "\" y=\"" << y + 4 << "\" font-size=\"11\">" << id << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string evaluation_to_csv(const PlanEvaluation& ev)
{
    std::string out = "cut,tool,stock,s_i,w_i,o_i,t_i,epsilon_i,p_i\n";
    double s = 0, w = 0, o = 0, t = 0;
    Length eps, p;
    for (std::size_t i = 0; i < ev.cuts.size(); ++i) {
        const auto& c = ev.cuts[i];
        std::string stocks;
        for (std::size_t k = 0; k < c.cut.stocks.size(); ++k) {
            if (k) stocks += '+';
            stocks += std::to_string(c.cut.stocks[k]);
        }
        out += std::to_string(i) + "," + to_string(c.cut.tool) + "," + stocks + "," + format_number(c.time.setup) + "," +
               format_number(c.time.load) + "," + format_number(c.time.operation) + "," +
               format_number(c.time.total()) + "," + format_number(c.epsilon.inches()) + "," +
               format_number(c.op_error.inches()) + "\n";
        s += c.time.setup;
        w += c.time.load;
        o += c.time.operation;
        t += c.time.total();
        eps += c.epsilon;
        p += c.op_error;
    }
    out += "total,,," + format_number(s) + "," + format_number(w) + "," + format_number(o) + "," + format_number(t) +
           "," + format_number(eps.inches()) + "," + format_number(p.inches()) + "\n";
    out += "f_c,f_p,f_t\n";
    out += format_number(ev.material) + "," + format_number(ev.precision_inches()) + "," + format_number(ev.minutes()) +
           "\n";
    return out;
}

} // namespace carpentry
