#include "carpentry/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <thread>

#include "carpentry/analysis.hpp"
#include "carpentry/io.hpp"
#include "carpentry/libraries.hpp"
#include "carpentry/oracle.hpp"

namespace carpentry {

namespace {

namespace fs = std::filesystem;

std::string fixed2(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

Libraries load_libraries(const std::string& path)
{
    if (path.empty()) return default_libraries();
    return libraries_from_json(read_json(path));
}

ReferencePoint parse_reference(const std::vector<double>& coords, ObjectiveMode mode)
{
    if (coords.empty()) return ReferencePoint::default_for(mode);
    if (coords.size() != static_cast<std::size_t>(mode)) {
        throw InputError("reference point needs " + std::to_string(static_cast<int>(mode)) + " coordinates");
    }
    return ReferencePoint{coords};
}

std::vector<CostVector> costs_of(const std::vector<FrontRow>& rows)
{
    std::vector<CostVector> out;
    for (const auto& r : rows) out.push_back(r.cost);
    return out;
}

std::vector<FrontRow> load_front(const std::string& path)
{
    auto rows = front_from_csv(read_text(path));
    if (rows.empty()) throw InputError(path + ": front is empty");
    return rows;
}

struct Options {
    std::string design;
    std::string library;
    std::string plan;
    std::string out_dir;
    std::string front_a;
    std::string front_b;
    std::uint64_t seed{1};
    double alpha{0.75};
    std::size_t iterations{10};
    int objectives{3};
    bool baseline{false};
    std::size_t workers{0};
    std::vector<double> reference;
    std::vector<double> prices;
    double price{0.0};
    bool quiet{false};
};

int cmd_optimize(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto space = design_space_from_json(read_json(o.design));
    const auto libs = load_libraries(o.library);
    IceeParams params;
    params.seed = o.seed;
    params.alpha = o.alpha;
    params.iterations = o.iterations;
    params.mode = o.objectives == 2 ? ObjectiveMode::Two : ObjectiveMode::Three;
    params.workers = o.workers ? o.workers : std::max(1u, std::thread::hardware_concurrency());
    params.reference = parse_reference(o.reference, params.mode);

    std::string out_dir = o.out_dir;
    if (out_dir.empty()) {
        const char* env = std::getenv("CARPENTRY_OUT_DIR");
        out_dir = env && *env ? env : "out";
    }
    std::ostream* log = o.quiet ? nullptr : &err;
    const auto report = o.baseline ? baseline_run(space, libs, params, log) : icee_run(space, libs, params, log);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
    const auto rows = front_rows(report.front);
    write_text(fs::path(out_dir) / "front.csv", front_to_csv(rows));
    write_text(fs::path(out_dir) / "front.json", front_to_json(report.front).dump(2) + "\n");
    write_text(fs::path(out_dir) / "report.json", report_to_json(report).dump(2) + "\n");
    write_text(fs::path(out_dir) / "front.svg", front_to_svg(rows));
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    out << front_to_csv(rows);
    return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out)
{
    const auto libs = load_libraries(o.library);
    const auto plan = plan_from_json(read_json(o.plan), libs);
    out << evaluation_to_csv(evaluate_plan(plan, libs));
    return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto a = load_front(o.front_a);
    const auto b = load_front(o.front_b);
    if (a.front().cost.mode() != b.front().cost.mode()) throw InputError("fronts use different objective modes");
    const auto mode = a.front().cost.mode();
    const auto ref = parse_reference(o.reference, mode);
    const auto ca = costs_of(a);
    const auto cb = costs_of(b);
    std::vector<std::string> warnings;
    const double hv_a = hypervolume(ca, ref, &warnings);
    const double hv_b = hypervolume(cb, ref, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';

    const auto minimum = [](const std::vector<CostVector>& c, auto get) {
        double m = get(c.front());
        for (const auto& v : c) m = std::min(m, get(v));
        return m;
    };
    const auto mat = [](const CostVector& c) { return c.material; };
    const auto prec = [](const CostVector& c) { return c.precision.value_or(0.0); };
    const auto time = [](const CostVector& c) { return c.time; };

    out << "metric,baseline,candidate\n";
    out << "hypervolume," << format_number(hv_a) << ',' << format_number(hv_b) << '\n';
    out << "M," << fixed2(minimum(ca, mat)) << ',' << fixed2(minimum(cb, mat)) << '\n';
    if (mode == ObjectiveMode::Three) {
        out << "P," << fixed2(minimum(ca, prec)) << ',' << fixed2(minimum(cb, prec)) << '\n';
    }
    out << "T," << fixed2(minimum(ca, time)) << ',' << fixed2(minimum(cb, time)) << '\n';
    out << '\n' << "price_per_hour,baseline,candidate,improvement_percent\n";
    const auto& prices = o.prices.empty() ? kDefaultPrices : o.prices;
    for (const auto& cell : improvement_table(ca, cb, prices)) {
        out << format_number(cell.price) << ',' << fixed2(cell.scalar_a) << ',' << fixed2(cell.scalar_b) << ','
            << (cell.percent ? std::to_string(*cell.percent) : "undefined") << '\n';
    }
    return kExitOk;
}

int cmd_hypervolume(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto rows = load_front(o.front_a);
    std::vector<std::string> warnings;
    const double hv = hypervolume(costs_of(rows), parse_reference(o.reference, rows.front().cost.mode()), &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    out << format_number(hv) << '\n';
    return kExitOk;
}

int cmd_scalarize(const Options& o, std::ostream& out)
{
    const auto rows = load_front(o.front_a);
    const auto best = scalarize(costs_of(rows), o.price);
    const auto& r = rows[best.index];
    out << "design_id,plan_id,f_c,f_p,f_t,scalar\n";
    out << r.design_id << ',' << r.plan_id << ',' << format_number(r.cost.material) << ','
        << (r.cost.precision ? format_number(*r.cost.precision) : "") << ',' << format_number(r.cost.time) << ','
        << format_number(best.cost) << '\n';
    return kExitOk;
}

int cmd_dump(const Options& o, std::ostream& out)
{
    const auto text = libraries_to_json(load_libraries(o.library)).dump(2) + "\n";
    if (o.out_dir.empty()) {
        out << text;
    } else {
        write_text(o.out_dir, text);
    }
    return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out)
{
    const auto space = design_space_from_json(read_json(o.design));
    const auto libs = load_libraries(o.library);
    const auto mode = o.objectives == 2 ? ObjectiveMode::Two : ObjectiveMode::Three;
    const auto result = oracle_front(space, libs, mode);
    const auto csv = front_to_csv(front_rows(result.front));
    if (!o.out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(o.out_dir, ec);
        if (ec) throw IoError("cannot create " + o.out_dir + ": " + ec.message());
        write_text(fs::path(o.out_dir) / "front.csv", csv);
    }
    out << csv;
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Co-optimize carpentry designs and fabrication plans", "carpentry"};
    app.require_subcommand(1);
    Options o;

    const auto add_library = [&](CLI::App* sub) {
        sub->add_option("--library", o.library, "stock/tool library JSON (defaults built in)");
    };

    auto* optimize = app.add_subcommand("optimize", "search designs and plans; write the Pareto front");
    optimize->add_option("design", o.design, "design JSON")->required();
    add_library(optimize);
    optimize->add_option("--seed", o.seed, "master seed");
    optimize->add_option("--alpha", o.alpha, "probability of revisiting a front design")->check(CLI::Range(0.0, 1.0));
    optimize->add_option("--iterations", o.iterations, "maximum iterations")->check(CLI::PositiveNumber);
    optimize->add_option("--objectives", o.objectives, "2 (cost, time) or 3 (cost, precision, time)")
        ->check(CLI::IsMember({2, 3}));
    optimize->add_flag("--baseline", o.baseline, "fabrication-only search on the input design");
    optimize->add_option("--workers", o.workers, "worker threads (0: all cores)");
    optimize->add_option("--out", o.out_dir, "output directory (default $CARPENTRY_OUT_DIR or ./out)");
    optimize->add_option("--ref", o.reference, "hypervolume reference point")->delimiter(',');
    optimize->add_flag("--quiet", o.quiet, "no progress log");

    auto* evaluate = app.add_subcommand("evaluate", "cost breakdown of a fabrication plan");
    evaluate->add_option("plan", o.plan, "plan JSON")->required();
    add_library(evaluate);

    auto* compare = app.add_subcommand("compare", "compare a baseline front with a candidate front");
    compare->add_option("baseline", o.front_a, "baseline front CSV")->required();
    compare->add_option("candidate", o.front_b, "candidate front CSV")->required();
    compare->add_option("--ref", o.reference, "hypervolume reference point")->delimiter(',');
    compare->add_option("--prices", o.prices, "hourly prices for scalarization")->delimiter(',');

    auto* hv = app.add_subcommand("hypervolume", "hypervolume of a front CSV");
    hv->add_option("front", o.front_a, "front CSV")->required();
    hv->add_option("--ref", o.reference, "reference point")->delimiter(',');

    auto* scal = app.add_subcommand("scalarize", "cheapest solution at an hourly price");
    scal->add_option("front", o.front_a, "front CSV")->required();
    scal->add_option("--price", o.price, "dollars per hour")->check(CLI::NonNegativeNumber);

    auto* dump = app.add_subcommand("dump-libraries", "print the stock and tool libraries as JSON");
    add_library(dump);
    dump->add_option("--out", o.out_dir, "write to this file instead of stdout");

    auto* oracle = app.add_subcommand("oracle", "brute-force front for tiny inputs");
    oracle->add_option("design", o.design, "design JSON")->required();
    add_library(oracle);
    oracle->add_option("--objectives", o.objectives, "2 or 3")->check(CLI::IsMember({2, 3}));
    oracle->add_option("--out", o.out_dir, "also write front.csv here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (optimize->parsed()) return cmd_optimize(o, out, err);
        if (evaluate->parsed()) return cmd_evaluate(o, out);
        if (compare->parsed()) return cmd_compare(o, out, err);
        if (hv->parsed()) return cmd_hypervolume(o, out, err);
        if (scal->parsed()) return cmd_scalarize(o, out);
        if (dump->parsed()) return cmd_dump(o, out);
        if (oracle->parsed()) return cmd_oracle(o, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const PlanError& e) {
        err << "error";
        if (e.cut()) err << " at cut " << *e.cut();
        err << ": " << e.what() << '\n';
        return kExitValidation;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}

} // namespace carpentry
