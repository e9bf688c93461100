// oddorder: enumerate the happy subgroups, compute densities, classify curves
// and check densities against prime scans.
//
// Exit codes: 0 success, 1 mismatch or hypothesis violation, 2 usage or I/O.

#include "oddorder/catalog_io.hpp"
#include "oddorder/classifier.hpp"
#include "oddorder/ecurve.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

using namespace oddorder;

namespace {

struct Globals {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
    bool verbose = false;
};

int modulus_to_level(int modulus) {
    if (modulus == 8) return 3;
    if (modulus == 16) return 4;
    throw contract_error("--modulus must be 8 or 16");
}

SubgroupCatalog obtain_catalog(const std::string& path, const Globals& g) {
    if (!path.empty()) return load_catalog(path);
    CatalogOptions opt;
    if (g.verbose) opt.log = [](const std::string& s) { std::cerr << s << "\n"; };
    return build_catalog(3, opt);
}

double three_sigma(double delta, std::uint64_t n) { return 3.0 * std::sqrt(delta * (1.0 - delta) / double(n)); }

std::string fixed(double x, int digits = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

std::string histogram_str(const std::map<std::uint64_t, std::size_t>& h) {
    std::string s = "{";
    for (const auto& [k, v] : h) s += (s.size() > 1 ? "," : "") + std::to_string(k) + ":" + std::to_string(v);
    return s + "}";
}

int cmd_enumerate(int modulus, const std::string& out, const std::string& dot, const Globals& g) {
    const int k = modulus_to_level(modulus);
    CatalogOptions opt;
    if (g.verbose) opt.log = [](const std::string& s) { std::cerr << s << "\n"; };
    const SubgroupCatalog cat = build_catalog(k, opt);

    std::map<std::uint64_t, std::size_t> hist;
    std::size_t full_preimages = 0;
    for (const auto& c : cat.classes) {
        ++hist[c.index];
        if (group::contains_congruence_kernel(c.rep, 3)) ++full_preimages;
    }
    if (!out.empty()) save_catalog(cat, out);
    if (!dot.empty()) write_file(dot, to_dot(cat));

    std::cout << "modulus=" << modulus << " classes=" << cat.classes.size() << " index_histogram=" << histogram_str(hist)
              << " contain_mod8_kernel=" << full_preimages << "\n";
    return cat.classes.size() == 63 && full_preimages == cat.classes.size() ? 0 : 1;
}

int cmd_density(const std::string& catalog, int id, const std::string& gens, const Globals& g) {
    if ((id > 0) == !gens.empty()) throw contract_error("density: give exactly one of --id or --gens");
    if (!gens.empty()) {
        const group::Subgroup h = load_generators(gens);
        const DensityValue d = density_exact(h);
        std::cout << d.str() << " " << d.decimal() << "\n";
        return 0;
    }
    const SubgroupCatalog cat = obtain_catalog(catalog, g);
    const CatalogClass& c = cat.by_id(id);
    const DensityValue d = density_exact(group::core_of(c.rep));
    std::cout << d.str() << " " << d.decimal() << "\n";
    if (d != c.density) {
        std::cerr << "stored density " << c.density.str() << " differs from the computed value\n";
        return 1;
    }
    return 0;
}

void print_classification(const ClassifyReport& rep) {
    std::cout << "row=" << rep.row << " density=" << rep.density.str() << " (" << rep.density.decimal() << ")"
              << (rep.is_exemplar ? " exemplar" : "") << "\n";
    std::cout << "satisfied_rows=";
    for (std::size_t i = 0; i < rep.result.satisfied_rows.size(); ++i)
        std::cout << (i ? "," : "") << rep.result.satisfied_rows[i];
    std::cout << "\n";
    for (const auto& cert : rep.result.certificates) {
        if (cert.row == 1) continue;
        std::cout << "  row " << cert.row << ": " << reference_row(cert.row).element;
        if (cert.s) std::cout << " s=" << *cert.s;
        if (cert.d) std::cout << " d=" << *cert.d;
        std::cout << " value=" << cert.value << " = (" << cert.root << ")^2\n";
    }
    for (const auto& w : rep.result.warnings) std::cout << "warning: " << w << "\n";
}

int cmd_classify(std::int64_t a, std::int64_t c, std::int64_t k, const std::string& catalog, const Globals& g) {
    const CurveParams e = curve_from_params(a, c, k);
    const SubgroupCatalog cat = obtain_catalog(catalog, g);
    print_classification(classify_report(e, cat));
    return 0;
}

int cmd_verify(std::int64_t a, std::int64_t c, std::int64_t k, std::uint64_t xmax, const std::string& audit,
               const std::string& catalog, double tolerance, const Globals& g) {
    const CurveParams e = curve_from_params(a, c, k);
    const SubgroupCatalog cat = obtain_catalog(catalog, g);
    const ClassifyReport rep = classify_report(e, cat);
    ScanOptions so;
    so.workers = g.workers;
    so.seed = g.seed;
    so.audit = !audit.empty();
    const ScanReport scan = empirical_density(e, xmax, so);
    if (!audit.empty()) {
        std::string text = "p,N,s,m,odd\n";
        for (const auto& l : scan.audit) text += to_csv(l) + "\n";
        write_file(audit, text);
    }
    const double delta = rep.density.to_double();
    const double err = std::abs(scan.ratio_double() - delta);
    const double threshold = tolerance > 0 ? tolerance : three_sigma(delta, scan.primes_total);
    const bool ok = err <= threshold;
    std::cout << "row=" << rep.row << " density=" << rep.density.str() << " (" << rep.density.decimal() << ")"
              << " empirical=" << scan.decimal() << " x=" << xmax << " pi=" << scan.primes_total
              << " good=" << scan.primes_good << " odd=" << scan.odd_count << " abs_err=" << fixed(err)
              << " threshold=" << fixed(threshold) << " " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_table(const std::string& catalog, std::uint64_t xmax, const std::string& out, const Globals& g) {
    const SubgroupCatalog cat = obtain_catalog(catalog, g);
    std::ostringstream csv;
    csv << "row,a,c,k,density_exact,empirical,abs_err\n";
    std::set<DensityValue> distinct;
    std::vector<std::string> failures;
    ScanOptions so;
    so.workers = g.workers;
    so.seed = g.seed;
    for (const CatalogClass& cls : cat.classes) {
        const auto [a, c, k] = cls.exemplar;
        const CurveParams e = curve_from_params(a, c, k);
        distinct.insert(cls.density);
        int row = 0;
        try {
            row = *classify(e, cat).minimal_row;
        } catch (const hypothesis_error& ex) {
            failures.push_back("row " + std::to_string(cls.id) + ": " + ex.what());
        }
        if (row != 0 && row != cls.id)
            failures.push_back("row " + std::to_string(cls.id) + ": exemplar classifies as row " + std::to_string(row));
        const ScanReport scan = empirical_density(e, xmax, so);
        const double delta = cls.density.to_double();
        const double err = std::abs(scan.ratio_double() - delta);
        if (err > three_sigma(delta, scan.primes_total))
            failures.push_back("row " + std::to_string(cls.id) + ": |empirical - exact| = " + fixed(err) +
                               " exceeds 3 sigma");
        csv << cls.id << "," << a << "," << c << "," << k << "," << cls.density.str() << "," << scan.decimal() << ","
            << fixed(err) << "\n";
        if (g.verbose) std::cerr << "row " << cls.id << " done\n";
    }
    const DensityValue lo = *distinct.begin(), hi = *distinct.rbegin();
    std::ostringstream summary;
    summary << "rows=" << cat.classes.size() << " distinct_densities=" << distinct.size() << " min=" << lo.str()
            << " max=" << hi.str() << " failures=" << failures.size();
    csv << "# " << summary.str() << "\n";
    if (out.empty())
        std::cout << csv.str();
    else
        write_file(out, csv.str());
    for (const auto& f : failures) std::cout << "mismatch: " << f << "\n";
    std::cout << summary.str() << "\n";
    const bool ok = failures.empty() && cat.classes.size() == 63 && distinct.size() == 21 &&
                    lo == DensityValue(1, 14) && hi == DensityValue(89, 168);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Odd-order reductions on elliptic curves with a rational 2-torsion point"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--workers", g.workers, "worker threads for prime scans")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomised point counting");
    app.add_flag("-v,--verbose", g.verbose, "progress on stderr");

    int modulus = 8;
    std::string out, dot, catalog, gens, audit;
    int id = 0;
    std::int64_t a = 0, c = 0, k = 0;
    std::uint64_t xmax = 1'000'000;
    double tolerance = 0;

    auto* en = app.add_subcommand("enumerate", "enumerate the happy subgroup classes");
    en->add_option("--modulus", modulus, "8 or 16")->check(CLI::IsMember({8, 16}));
    en->add_option("--out", out, "catalog JSON");
    en->add_option("--dot", dot, "lattice in Graphviz format");

    auto* de = app.add_subcommand("density", "exact density of a catalog class or a generated subgroup");
    de->add_option("--catalog", catalog, "catalog JSON (built in memory if omitted)");
    de->add_option("--id", id, "row id")->check(CLI::Range(1, 63));
    de->add_option("--gens", gens, "generator file {\"modulus\": 8, \"generators\": [[9 ints]]}");

    auto* cl = app.add_subcommand("classify", "row of the image for the curve [a, c, k]");
    cl->add_option("--a", a)->required();
    cl->add_option("--c", c)->required();
    cl->add_option("--k", k)->required();
    cl->add_option("--catalog", catalog);

    auto* ve = app.add_subcommand("verify", "compare the exact density with a prime scan");
    ve->add_option("--a", a)->required();
    ve->add_option("--c", c)->required();
    ve->add_option("--k", k)->required();
    ve->add_option("--xmax", xmax)->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1} << 40));
    ve->add_option("--audit", audit, "per-prime CSV p,N,s,m,odd");
    ve->add_option("--catalog", catalog);
    ve->add_option("--tolerance", tolerance, "absolute tolerance (default 3 sigma)");

    auto* ta = app.add_subcommand("table", "scan every exemplar and compare with the exact densities");
    ta->add_option("--catalog", catalog);
    ta->add_option("--xmax", xmax)->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1} << 40));
    ta->add_option("--out", out, "CSV output (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*en) return cmd_enumerate(modulus, out, dot, g);
        if (*de) return cmd_density(catalog, id, gens, g);
        if (*cl) return cmd_classify(a, c, k, catalog, g);
        if (*ve) return cmd_verify(a, c, k, xmax, audit, catalog, tolerance, g);
        if (*ta) return cmd_table(catalog, xmax, out, g);
    } catch (const hypothesis_error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const budget_error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const contract_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
