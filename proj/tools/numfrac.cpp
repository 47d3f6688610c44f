// numfrac: value tables, fractal patterns and dimension reports for the
// carry/extreme value transforms over arbitrary number bases.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "numfrac/digitcore.hpp"
#include "numfrac/dimension.hpp"
#include "numfrac/gridgen.hpp"
#include "numfrac/render.hpp"
#include "verify_suites.hpp"

namespace fs = std::filesystem;
using namespace numfrac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Relative output paths land under NUMFRAC_OUT_DIR when it is set.
fs::path resolve_out(const std::string& path) {
    fs::path p{path};
    const char* dir = std::getenv("NUMFRAC_OUT_DIR");
    if (dir != nullptr && *dir != '\0' && p.is_relative()) return fs::path{dir} / p;
    return p;
}

// Writes to the given path, or to stdout when path is empty or "-".
int write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
        return kExitOk;
    }
    const fs::path target = resolve_out(path);
    std::error_code ec;
    if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
    std::ofstream out(target, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open " << target.string() << " for writing\n";
        return kExitIo;
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        std::cerr << "error: short write to " << target.string() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

std::string format_dimension(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9f", d);
    return buf;
}

std::string table_csv(Base base, std::uint32_t depth, TransformKind t, bool header) {
    std::string csv;
    const GridSpec spec(base, depth);
    if (header) {
        csv += "a\\b";
        for (std::uint64_t b = 0; b < spec.side(); ++b) csv += "," + std::to_string(b);
        csv += "\n";
    }
    stream_table_rows(spec, t, [&](std::uint64_t a, std::span<const std::uint32_t> row) {
        std::string line;
        if (header) line += std::to_string(a) + ",";
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) line += ',';
            line += std::to_string(row[i]);
        }
        line += '\n';
        csv += line;
    });
    return csv;
}

std::string dim_csv(Base from, Base to, DimFamily family, bool header) {
    std::string csv;
    if (header) csv += "base,copies,scale_denominator,dimension\n";
    for (const DimensionRecord& rec : dimension_table(from, to, family)) {
        csv += std::to_string(rec.base) + "," + std::to_string(rec.copies) + "," +
               std::to_string(rec.scale_denominator) + "," + format_dimension(rec.dimension) + "\n";
    }
    if (family == DimFamily::evt && from.value() <= 29 && to.value() >= 29) {
        csv += "# base 29: emitted " + format_dimension(similarity_dim_evt(Base{29})) +
               " = log(57)/log(29); the commonly tabulated 1.195425616 does not satisfy "
               "log(2n-1)/log(n) and is treated as an erratum\n";
    }
    return csv;
}

std::string fit_jsonl(const nlohmann::json& params, const BoxCountFit& fit) {
    nlohmann::json j = params;
    j["scales"] = fit.scales;
    j["counts"] = fit.counts;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r2"] = fit.r2;
    return j.dump() + "\n";
}

struct RenderRequest {
    std::uint64_t base = 2;
    std::uint32_t depth = 1;
    TransformKind transform = TransformKind::cvt;
    std::string target; // empty: value-table rendering
    ImageFormat format = ImageFormat::pbm_binary;
    std::uint32_t cell_pixels = 1;
    std::string palette = "gray";
    bool flip = false;
};

std::string render_bytes(const RenderRequest& req) {
    const GridSpec spec(Base{req.base}, req.depth);
    ImageSpec image{req.format, req.cell_pixels};
    image.flip_vertical = req.flip;

    if (!req.target.empty()) {
        PatternQuery q = PatternQuery::zero(req.transform);
        if (req.target == "top")
            q = PatternQuery::top(req.transform);
        else if (req.target != "zero")
            q = PatternQuery::value(req.transform, std::stoull(req.target));
        const auto bytes = render_indicator(indicator(spec, q), image);
        return {bytes.begin(), bytes.end()};
    }

    if (req.palette == "gray")
        image.palette = Palette::grayscale();
    else if (req.palette.rfind("mod:", 0) == 0)
        image.palette = Palette::value_modulo(std::stoull(req.palette.substr(4)));
    else
        throw Error("unknown palette '" + req.palette + "' (expected gray or mod:<m>)");
    const auto bytes = render_table(build_table(spec, req.transform), image);
    return {bytes.begin(), bytes.end()};
}

int run_repro(const std::string& out_dir) {
    const fs::path root = resolve_out(out_dir);
    std::vector<std::string> written;
    const auto emit = [&](const fs::path& rel, const std::string& bytes) {
        const fs::path target = root / rel;
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
        std::ofstream out(target, std::ios::binary);
        if (!out) throw std::ios_base::failure("cannot open " + target.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::ios_base::failure("short write to " + target.string());
        written.push_back(rel.string());
    };
    const auto image = [&](const fs::path& rel, std::uint64_t base, std::uint32_t depth,
                           TransformKind t, const char* target) {
        RenderRequest req;
        req.base = base;
        req.depth = depth;
        req.transform = t;
        req.target = target;
        emit(rel, render_bytes(req));
    };

    // dimension tables and the data behind the two dimension-vs-base curves
    emit("tables/cvt_dimensions.csv", dim_csv(Base{2}, Base{29}, DimFamily::cvt, true));
    emit("tables/evt_dimensions.csv", dim_csv(Base{2}, Base{29}, DimFamily::evt, true));

    // value tables (the printed 16x16 binary table sits in the top-left of
    // the depth-4 grid; the ternary and 4-ary prints are sub-blocks too)
    emit("tables/evt_table_base2_depth4.csv", table_csv(Base{2}, 4, TransformKind::evt_max, false));
    emit("tables/evt_table_base3_depth3.csv", table_csv(Base{3}, 3, TransformKind::evt_max, false));
    emit("tables/evt_table_base4_depth3.csv", table_csv(Base{4}, 3, TransformKind::evt_max, false));
    emit("tables/cvt_table_base2_depth4.csv", table_csv(Base{2}, 4, TransformKind::cvt, false));
    emit("tables/cvt_table_base3_depth2.csv", table_csv(Base{3}, 2, TransformKind::cvt, false));

    // zero-pattern fractals per base, plus their generators
    image("images/cvt_zero_base2_depth8.pbm", 2, 8, TransformKind::cvt, "zero");
    image("images/cvt_zero_base3_depth5.pbm", 3, 5, TransformKind::cvt, "zero");
    image("images/cvt_zero_base4_depth4.pbm", 4, 4, TransformKind::cvt, "zero");
    image("images/cvt_zero_base5_depth3.pbm", 5, 3, TransformKind::cvt, "zero");
    image("images/evt_top_base2_depth4.pbm", 2, 4, TransformKind::evt_max, "top");
    image("images/evt_top_base3_depth3.pbm", 3, 3, TransformKind::evt_max, "top");
    image("images/evt_top_base4_depth3.pbm", 4, 3, TransformKind::evt_max, "top");
    for (std::uint64_t n : {2, 3, 4, 5}) {
        image("generators/cvt_zero_base" + std::to_string(n) + "_gen.pbm", n, 1,
              TransformKind::cvt, "zero");
        image("generators/cvt_zero_base" + std::to_string(n) + "_depth2.pbm", n, 2,
              TransformKind::cvt, "zero");
    }

    // overlay increment reports
    for (std::uint64_t n : {3, 4}) {
        const BoxCountFit fit = increment_analysis(Base{n});
        emit("increment/increment_base" + std::to_string(n) + ".jsonl",
             fit_jsonl({{"n", n}, {"render_side", (n * (n - 1)) * (n * (n - 1)) * (n * (n - 1))}},
                       fit));
    }

    for (const auto& name : written) std::cout << name << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"carry/extreme value transform tables, fractals and dimensions"};
    app.set_config("--config", "", "key=value config file; flags override it");
    app.require_subcommand(1);

    const std::map<std::string, TransformKind> transform_names{
        {"cvt", TransformKind::cvt},
        {"evtmax", TransformKind::evt_max},
        {"evtmin", TransformKind::evt_min}};
    const std::map<std::string, DimFamily> family_names{{"cvt", DimFamily::cvt},
                                                        {"evt", DimFamily::evt}};
    const std::map<std::string, ImageFormat> format_names{{"p1", ImageFormat::pbm_ascii},
                                                          {"p4", ImageFormat::pbm_binary},
                                                          {"p2", ImageFormat::pgm_ascii},
                                                          {"p5", ImageFormat::pgm_binary},
                                                          {"p6", ImageFormat::ppm_binary}};

    // table
    std::uint64_t tbl_base = 2;
    std::uint32_t tbl_depth = 1;
    TransformKind tbl_transform = TransformKind::cvt;
    bool tbl_header = false;
    std::string tbl_out;
    auto* tbl = app.add_subcommand("table", "emit a side x side CSV of transform values");
    tbl->add_option("--base", tbl_base, "number base")->required()->check(CLI::Range(2, 65536));
    tbl->add_option("--depth", tbl_depth, "grid depth; side = base^depth")
        ->required()
        ->check(CLI::Range(1, 63));
    tbl->add_option("--transform", tbl_transform, "transform")
        ->required()
        ->transform(CLI::CheckedTransformer(transform_names));
    tbl->add_flag("--header", tbl_header, "emit a header row/column");
    tbl->add_option("--out", tbl_out, "output file (default stdout)");

    // render
    RenderRequest rr;
    std::string render_out;
    auto* ren = app.add_subcommand("render", "rasterize a pattern or value table to netpbm");
    ren->add_option("--base", rr.base, "number base")->required()->check(CLI::Range(2, 65536));
    ren->add_option("--depth", rr.depth, "grid depth")->required()->check(CLI::Range(1, 63));
    ren->add_option("--transform", rr.transform, "transform")
        ->required()
        ->transform(CLI::CheckedTransformer(transform_names));
    ren->add_option("--target", rr.target,
                    "pattern target: zero, top, or an integer; omit to render the value table");
    ren->add_option("--format", rr.format, "netpbm flavor")
        ->required()
        ->transform(CLI::CheckedTransformer(format_names));
    ren->add_option("--cell-pixels", rr.cell_pixels, "pixels per cell")->check(CLI::Range(1, 4096));
    ren->add_option("--palette", rr.palette, "table palette: gray or mod:<m>");
    ren->add_flag("--flip", rr.flip, "render row a=0 at the bottom");
    ren->add_option("--out", render_out, "output file (default stdout)");

    // dim
    std::uint64_t dim_from = 2, dim_to = 29;
    DimFamily dim_family = DimFamily::cvt;
    bool dim_header = false;
    std::string dim_out;
    auto* dim = app.add_subcommand("dim", "closed-form dimension table as CSV");
    dim->add_option("--family,--which", dim_family, "cvt or evt")
        ->required()
        ->transform(CLI::CheckedTransformer(family_names));
    dim->add_option("--from", dim_from, "first base")->check(CLI::Range(2, 100000000));
    dim->add_option("--to", dim_to, "last base")->check(CLI::Range(2, 100000000));
    dim->add_flag("--header", dim_header, "emit a header row");
    dim->add_option("--out", dim_out, "output file (default stdout)");

    // verify
    verify::Options vopt;
    std::string verify_out;
    auto* ver = app.add_subcommand("verify", "run the invariant suites; exit 0 iff all pass");
    ver->add_option("--suite", vopt.suite, "all|identities|substitution|counts|convergence|boxcount")
        ->check(CLI::IsMember({"all", "identities", "substitution", "counts", "convergence",
                               "boxcount"}));
    ver->add_option("--n-max", vopt.n_max, "upper base for convergence checks")
        ->check(CLI::Range(3, 1000000000));
    ver->add_option("--seed", vopt.seed, "seed for randomized sampling");
    ver->add_flag("--inject-fault", vopt.inject_fault)->group(""); // test-harness hook
    ver->add_option("--out", verify_out, "JSONL report file (default stdout)");

    // increment
    std::uint64_t inc_n = 3;
    std::uint64_t inc_render_side = 0;
    std::string inc_out;
    auto* inc = app.add_subcommand("increment", "overlay increment analysis between base n-1 and n");
    inc->add_option("--n", inc_n, "target base (>= 3)")->required()->check(CLI::Range(3, 65536));
    inc->add_option("--render-side", inc_render_side,
                    "overlay side; a power of n(n-1), default (n(n-1))^3");
    inc->add_option("--out", inc_out, "JSONL report file (default stdout)");

    // repro
    std::string repro_dir;
    auto* rep = app.add_subcommand("repro", "regenerate every table/figure artifact into a directory");
    rep->add_option("--out-dir", repro_dir, "target directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (tbl->parsed())
            return write_output(tbl_out, table_csv(Base{tbl_base}, tbl_depth, tbl_transform, tbl_header));

        if (ren->parsed()) return write_output(render_out, render_bytes(rr));

        if (dim->parsed()) {
            if (dim_from > dim_to) {
                std::cerr << "error: --from must not exceed --to\n";
                return kExitUsage;
            }
            return write_output(dim_out, dim_csv(Base{dim_from}, Base{dim_to}, dim_family, dim_header));
        }

        if (ver->parsed()) {
            const auto results = verify::run(vopt);
            std::string report;
            bool all_pass = true;
            for (const auto& r : results) {
                nlohmann::json line = r.detail;
                line["check"] = r.name;
                line["pass"] = r.pass;
                report += line.dump() + "\n";
                all_pass = all_pass && r.pass;
            }
            const int io = write_output(verify_out, report);
            if (io != kExitOk) return io;
            return all_pass ? kExitOk : kExitVerifyFailed;
        }

        if (inc->parsed()) {
            const BoxCountFit fit = increment_analysis(Base{inc_n}, inc_render_side);
            const std::uint64_t used_side =
                inc_render_side != 0 ? inc_render_side
                                     : inc_n * (inc_n - 1) * inc_n * (inc_n - 1) * inc_n * (inc_n - 1);
            return write_output(inc_out, fit_jsonl({{"n", inc_n}, {"render_side", used_side}}, fit));
        }

        if (rep->parsed()) return run_repro(repro_dir);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
