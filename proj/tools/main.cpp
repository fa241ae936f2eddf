// qgeom command-line tool: dataset generation, training and analysis of
// matrix configurations. Every command writes a manifest next to its output.

#include <cstdio>
#include <iostream>
#include <memory>
#include <set>

#include <spdlog/spdlog.h>

#include "cli_support.hpp"
#include "qgeom/qgeom.hpp"

namespace qgeom::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

AffineSlice slice_from_axes(const std::vector<int>& axes, Eigen::Index d) {
    if (axes.size() != 3) throw ValidationError("--axes needs exactly three feature indices");
    std::set<int> unique(axes.begin(), axes.end());
    AffineSlice s;
    s.origin = RVector::Zero(d);
    s.frame = RMatrix::Zero(d, 3);
    for (int k = 0; k < 3; ++k) {
        const int a = axes[static_cast<std::size_t>(k)];
        if (a < 0 || a >= d || unique.size() != 3) {
            throw ValidationError("--axes must be three distinct indices below D = " + std::to_string(d));
        }
        s.frame(a, k) = 1.0;
    }
    return s;
}

std::array<double, 3> to_array3(const std::vector<double>& v, const char* flag) {
    if (v.size() != 3) throw ValidationError(std::string(flag) + " needs three comma-separated values");
    return {v[0], v[1], v[2]};
}

json degeneracy_json(const DegeneracyPoint& p) {
    json j;
    j["location"] = p.location;
    j["feature_location"] = to_json(p.feature_location);
    j["gap"] = p.gap;
    j["charge"] = p.charge ? json(*p.charge) : json(nullptr);
    return j;
}

// ---------------------------------------------------------------- generate

void add_generate(CLI::App& app) {
    struct Args {
        std::string kind;
        std::size_t n = 1000;
        double noise = 0.0;
        std::uint64_t seed = 0;
        double radius = 1.0;
        std::size_t n_ref = 100;
        double a_max = 0.9;
        int ball_dim = 2;
        bool random_theta = false;
        bool area_weighted = false;
        std::string out;
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("generate", "Generate a synthetic dataset as headerless CSV");
    sub->add_option("kind", args->kind, "Generator")
        ->required()
        ->check(CLI::IsMember({"sphere", "two-spheres", "sphere-nonuniform", "conformal-maps",
                               "blaschke-potapov"}));
    sub->add_option("--n", args->n, "Number of rows")->capture_default_str();
    sub->add_option("--noise", args->noise, "Gaussian noise standard deviation")->capture_default_str();
    sub->add_option("--seed", args->seed, "Random seed")->capture_default_str();
    sub->add_option("--radius", args->radius, "Sphere radius (sphere)")->capture_default_str();
    sub->add_option("--n-ref", args->n_ref, "Reference points (conformal maps)")->capture_default_str();
    sub->add_option("--a-max", args->a_max, "Largest |a| (conformal maps)")->capture_default_str();
    sub->add_option("--ball-dim", args->ball_dim, "Complex ball dimension (blaschke-potapov)")
        ->capture_default_str();
    sub->add_flag("--random-theta", args->random_theta, "Draw the rotation angle uniformly");
    sub->add_flag("--area-weighted", args->area_weighted, "Split two-spheres points by area");
    sub->add_option("--out", args->out, "Output CSV (default <kind>.csv)");
    sub->callback([args, sub] {
        RunManifest manifest("generate", *sub);
        manifest.seed(args->seed);
        Dataset ds;
        if (args->kind == "sphere") {
            ds = sphere_uniform(args->n, args->radius, RVector::Zero(3), args->noise, args->seed);
        } else if (args->kind == "two-spheres") {
            TwoSpheresParams p;
            p.area_weighted = args->area_weighted;
            ds = two_spheres(args->n, p, args->noise, args->seed);
        } else if (args->kind == "sphere-nonuniform") {
            ds = sphere_nonuniform(args->n, args->noise, args->seed);
        } else if (args->kind == "conformal-maps") {
            ds = conformal_maps(args->n, args->n_ref, args->a_max, args->seed, args->random_theta);
        } else {
            ds = blaschke_potapov(args->n, args->n_ref, args->ball_dim, args->a_max, args->seed,
                                  args->random_theta);
        }
        const fs::path out = args->out.empty() ? fs::path(args->kind + ".csv") : fs::path(args->out);
        write_csv(out, ds.rows);
        manifest.output(out);

        json prov;
        prov["generator"] = ds.provenance.generator;
        prov["parameters"] = ds.provenance.parameters;
        prov["seed"] = args->seed;
        prov["rows"] = ds.rows.rows();
        prov["cols"] = ds.rows.cols();
        const fs::path prov_path = out.string() + ".provenance.json";
        write_json(prov_path, prov);
        manifest.output(prov_path);
        if (!ds.labels.empty()) {
            RMatrix labels(static_cast<Eigen::Index>(ds.labels.size()), 1);
            for (std::size_t i = 0; i < ds.labels.size(); ++i) labels(static_cast<Eigen::Index>(i), 0) = ds.labels[i];
            const fs::path p = out.string() + ".labels.csv";
            write_csv(p, labels);
            manifest.output(p);
        }
        if (ds.aux.size() > 0) {
            const fs::path p = out.string() + ".params.csv";
            write_csv(p, ds.aux);
            manifest.output(p);
        }
        manifest.write(out);
    });
}

// ---------------------------------------------------------------- train

void add_train(CLI::App& app) {
    struct Args {
        std::string data;
        bool header = false;
        bool scale = false;
        TrainingConfig tc;
        std::string init;
        std::size_t checkpoint_every = 0;
        std::size_t log_every = 100;
        std::string out = "config.json";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("train", "Learn a matrix configuration from a point cloud");
    sub->add_option("--data", args->data, "Input CSV")->required()->check(CLI::ExistingFile);
    sub->add_flag("--header", args->header, "Input CSV has a header row");
    sub->add_flag("--scale", args->scale, "Standard-scale every column before training");
    sub->add_option("--hilbert-dim", args->tc.hilbert_dim, "Hilbert-space dimension N")->capture_default_str();
    sub->add_option("--weight", args->tc.fluctuation_weight, "Fluctuation weight w")->capture_default_str();
    sub->add_option("--epochs", args->tc.epochs, "Training epochs")->capture_default_str();
    sub->add_option("--batch", args->tc.batch_size, "Mini-batch size")->capture_default_str();
    sub->add_option("--lr", args->tc.learning_rate, "Adam learning rate")->capture_default_str();
    sub->add_option("--seed", args->tc.seed, "Seed for initialization and shuffling")->capture_default_str();
    sub->add_option("--init", args->init, "Start from this configuration JSON")->check(CLI::ExistingFile);
    sub->add_option("--checkpoint-every", args->checkpoint_every, "Write a checkpoint every K epochs (0: never)")
        ->capture_default_str();
    sub->add_option("--log-every", args->log_every, "Log the loss every K epochs (0: never)")->capture_default_str();
    sub->add_option("--out", args->out, "Output configuration JSON")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("train", *sub);
        manifest.seed(args->tc.seed);
        manifest.input(args->data);
        Dataset ds = load_csv(args->data, args->header);
        if (args->scale) ds = standard_scale(ds).data;
        const fs::path out = args->out;

        TrainingCallbacks cb;
        cb.on_epoch = [&](std::size_t epoch, double loss) {
            if (args->log_every && (epoch + 1) % args->log_every == 0) {
                spdlog::info("epoch {:>7}  loss {:.6e}", epoch + 1, loss);
            }
        };
        cb.checkpoint_every = args->checkpoint_every;
        cb.on_checkpoint = [&](std::size_t epoch, const MatrixConfiguration& cfg) {
            const fs::path p = out.string() + ".epoch" + std::to_string(epoch) + ".json";
            write_configuration(p, cfg);
            manifest.output(p);
        };
        TrainingResult result = [&] {
            if (args->init.empty()) return train(ds.rows, args->tc, cb);
            manifest.input(args->init);
            return train_from(read_configuration(args->init), ds.rows, args->tc, cb);
        }();
        write_configuration(out, result.configuration);
        manifest.output(out);

        json report;
        report["epoch_loss"] = result.report.epoch_loss;
        report["final_loss"] = result.report.final_loss;
        report["degenerate_skips"] = result.report.degenerate_skips;
        report["wall_seconds"] = result.report.wall_seconds;
        const fs::path report_path = out.string() + ".report.json";
        write_json(report_path, report);
        manifest.output(report_path);
        manifest.extra()["final_loss"] = result.report.final_loss;
        manifest.write(out);
    });
}

// ---------------------------------------------------------------- cloud / qg-cloud

std::vector<std::string> cloud_header(Eigen::Index d) {
    std::vector<std::string> h{"row"};
    for (Eigen::Index a = 0; a < d; ++a) h.push_back("x" + std::to_string(a));
    for (Eigen::Index a = 0; a < d; ++a) h.push_back("image" + std::to_string(a));
    h.insert(h.end(), {"displacement_sq", "variance", "energy"});
    return h;
}

RMatrix cloud_table(const Cloud& cloud, Eigen::Index d) {
    RMatrix t(static_cast<Eigen::Index>(cloud.points.size()), 2 * d + 4);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        const CloudPoint& p = cloud.points[i];
        t(r, 0) = static_cast<double>(cloud.rows[i]);
        t.row(r).segment(1, d) = p.source.transpose();
        t.row(r).segment(1 + d, d) = p.image.transpose();
        t(r, 2 * d + 1) = p.displacement_sq;
        t(r, 2 * d + 2) = p.variance;
        t(r, 2 * d + 3) = p.energy;
    }
    return t;
}

void report_degenerate(const Cloud& cloud, RunManifest& manifest) {
    if (cloud.degenerate_rows.empty()) return;
    std::string list;
    for (std::size_t i = 0; i < cloud.degenerate_rows.size() && i < 20; ++i) {
        list += (i ? ", " : "") + std::to_string(cloud.degenerate_rows[i]);
    }
    spdlog::warn("{} rows with a degenerate ground state were skipped (rows {}{})",
                 cloud.degenerate_rows.size(), list, cloud.degenerate_rows.size() > 20 ? ", ..." : "");
    manifest.extra()["degenerate_rows"] = cloud.degenerate_rows;
}

void add_cloud(CLI::App& app) {
    struct Args {
        std::string config = "config.json";
        std::string data;
        bool header = false;
        std::string out = "cloud.csv";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("cloud", "Map data points to their quasi-coherent expectation values");
    sub->add_option("--config", args->config, "Configuration JSON")->capture_default_str()->check(CLI::ExistingFile);
    sub->add_option("--data", args->data, "Input CSV")->required()->check(CLI::ExistingFile);
    sub->add_flag("--header", args->header, "Input CSV has a header row");
    sub->add_option("--out", args->out, "Output CSV")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("cloud", *sub);
        manifest.input(args->config);
        manifest.input(args->data);
        const MatrixConfiguration cfg = read_configuration(args->config);
        const Cloud cloud = qcml_cloud(cfg, read_rows(args->data, args->header));
        report_degenerate(cloud, manifest);
        write_csv(args->out, cloud_table(cloud, cfg.feature_dim()), cloud_header(cfg.feature_dim()));
        manifest.output(args->out);
        manifest.write(args->out);
    });
}

void add_qg_cloud(CLI::App& app) {
    struct Args {
        std::string config = "config.json";
        std::string data;
        bool header = false;
        std::vector<double> lo, hi;
        double inflate = 0.2;
        std::size_t n = 1000;
        std::uint64_t seed = 0;
        std::string out = "qg_cloud.csv";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("qg-cloud", "Expectation-value images of uniform samples from a box");
    sub->add_option("--config", args->config, "Configuration JSON")->capture_default_str()->check(CLI::ExistingFile);
    sub->add_option("--data", args->data, "Sample the bounding box of this CSV")->check(CLI::ExistingFile);
    sub->add_flag("--header", args->header, "Input CSV has a header row");
    sub->add_option("--lo", args->lo, "Lower box corner (comma separated)")->delimiter(',');
    sub->add_option("--hi", args->hi, "Upper box corner (comma separated)")->delimiter(',');
    sub->add_option("--inflate", args->inflate, "Relative widening of the data bounding box")->capture_default_str();
    sub->add_option("--n", args->n, "Number of samples")->capture_default_str();
    sub->add_option("--seed", args->seed, "Random seed")->capture_default_str();
    sub->add_option("--out", args->out, "Output CSV")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("qg-cloud", *sub);
        manifest.seed(args->seed);
        manifest.input(args->config);
        const MatrixConfiguration cfg = read_configuration(args->config);
        Box box;
        if (!args->data.empty()) {
            manifest.input(args->data);
            box = bounding_box(read_rows(args->data, args->header), args->inflate);
        } else if (!args->lo.empty() && !args->hi.empty()) {
            box = {to_vector(args->lo), to_vector(args->hi)};
        } else {
            throw ValidationError("qg-cloud: pass --data or both --lo and --hi");
        }
        if (box.lo.size() != cfg.feature_dim() || box.hi.size() != cfg.feature_dim()) {
            throw ValidationError("qg-cloud: box dimension does not match the configuration");
        }
        const Cloud cloud = qg_point_cloud(cfg, box, args->n, args->seed);
        report_degenerate(cloud, manifest);
        write_csv(args->out, cloud_table(cloud, cfg.feature_dim()), cloud_header(cfg.feature_dim()));
        manifest.output(args->out);
        manifest.write(args->out);
    });
}

// ---------------------------------------------------------------- laplacian family

void add_laplacian(CLI::App& app) {
    struct Args {
        std::string config = "config.json";
        std::string out = "spectrum.csv";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("laplacian", "Spectrum of the matrix Laplacian");
    sub->add_option("--config", args->config, "Configuration JSON")->capture_default_str()->check(CLI::ExistingFile);
    sub->add_option("--out", args->out, "Output CSV")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("laplacian", *sub);
        manifest.input(args->config);
        const LaplacianAnalysis an = laplacian_spectrum(read_configuration(args->config));
        RMatrix table(an.eigenvalues.size(), 2);
        for (Eigen::Index i = 0; i < an.eigenvalues.size(); ++i) table.row(i) << double(i), an.eigenvalues(i);
        write_csv(args->out, table, {"index", "eigenvalue"});
        manifest.output(args->out);
        const double tol = default_zero_tolerance(an);
        manifest.extra()["zero_tolerance"] = tol;
        manifest.extra()["zero_modes"] = count_zero_modes(an, tol);
        manifest.write(args->out);
    });
}

void add_eigenmaps(CLI::App& app) {
    struct Args {
        std::string config = "config.json";
        std::size_t count = 0;
        std::string out = "overlap.csv";
        std::string maps = "eigenmaps.json";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("eigenmaps", "Laplacian eigenmaps and their overlaps with the observables");
    sub->add_option("--config", args->config, "Configuration JSON")->capture_default_str()->check(CLI::ExistingFile);
    sub->add_option("--count", args->count, "Number of eigenmaps to keep (0: all)")->capture_default_str();
    sub->add_option("--out", args->out, "Overlap CSV, rows = features")->capture_default_str();
    sub->add_option("--maps", args->maps, "Eigenmap JSON")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("eigenmaps", *sub);
        manifest.input(args->config);
        const MatrixConfiguration cfg = read_configuration(args->config);
        const LaplacianAnalysis an = laplacian_spectrum(cfg);
        const std::size_t n = args->count == 0 ? an.eigenmaps.size() : args->count;
        if (n > an.eigenmaps.size()) throw ValidationError("eigenmaps: --count exceeds N^2");
        const RMatrix overlap = eigenmap_overlap(an, cfg).leftCols(static_cast<Eigen::Index>(n));
        write_csv(args->out, overlap);
        manifest.output(args->out);
        write_text_atomic(args->maps, matrices_to_json({an.eigenmaps.begin(),
                                                        an.eigenmaps.begin() + static_cast<std::ptrdiff_t>(n)}));
        manifest.output(args->maps);
        manifest.write(args->out);
    });
}

void add_components(CLI::App& app) {
    struct Args {
        std::string config = "config.json";
        double tol_zero = -1.0;
        std::string out = "components.json";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("components", "Projectors onto the irreducible blocks from Laplacian zero modes");
    sub->add_option("--config", args->config, "Configuration JSON")->capture_default_str()->check(CLI::ExistingFile);
    sub->add_option("--tol-zero", args->tol_zero, "Zero-mode threshold (default 1e-3 x median eigenvalue)");
    sub->add_option("--out", args->out, "Output JSON")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("components", *sub);
        manifest.input(args->config);
        const LaplacianAnalysis an = laplacian_spectrum(read_configuration(args->config));
        const double tol = args->tol_zero >= 0.0 ? args->tol_zero : default_zero_tolerance(an);
        const ComponentDecomposition dec = zero_mode_components(an, tol);
        json doc;
        doc["zero_tolerance"] = tol;
        doc["zero_modes"] = count_zero_modes(an, tol);
        doc["residual"] = dec.residual;
        doc["projectors"] = json::array();
        for (const auto& p : dec.projectors) doc["projectors"].push_back(to_json(p.matrix()));
        write_json(args->out, doc);
        manifest.output(args->out);
        manifest.write(args->out);
    });
}

void add_dimension(CLI::App& app) {
    struct Args {
        std::string config = "config.json";
        std::string data;
        bool header = false;
        double threshold = 5.0;
        std::string out = "dimension.json";
        std::string spectra = "metric_spectra.csv";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("dimension", "Intrinsic dimension from Weyl's law and the quantum metric");
    sub->add_option("--config", args->config, "Configuration JSON")->capture_default_str()->check(CLI::ExistingFile);
    sub->add_option("--data", args->data, "Points at which to evaluate the metric")->required()->check(CLI::ExistingFile);
    sub->add_flag("--header", args->header, "Input CSV has a header row");
    sub->add_option("--threshold", args->threshold, "Eigenvalue ratio that counts as a spectral gap")
        ->capture_default_str();
    sub->add_option("--out", args->out, "Output JSON")->capture_default_str();
    sub->add_option("--spectra", args->spectra, "Per-point metric spectra CSV")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("dimension", *sub);
        manifest.input(args->config);
        manifest.input(args->data);
        const MatrixConfiguration cfg = read_configuration(args->config);
        json doc;
        try {
            const WeylFit fit = weyl_dimension(laplacian_spectrum(cfg));
            doc["weyl_d"] = fit.dimension;
            doc["weyl_window"] = {fit.window.lo, fit.window.hi};
            doc["zero_modes"] = fit.zero_modes;
        } catch (const FitError& e) {
            doc["weyl_d"] = nullptr;
            doc["weyl_error"] = e.what();
        }
        const MetricDimension md = metric_dimension(cfg, read_rows(args->data, args->header), args->threshold);
        doc["metric_d"] = md.dimension;
        doc["metric_fraction"] = md.fraction;
        doc["degenerate_rows"] = md.degenerate_rows;
        write_json(args->out, doc);
        manifest.output(args->out);
        write_csv(args->spectra, md.spectra);
        manifest.output(args->spectra);
        manifest.write(args->out);
    });
}

// ---------------------------------------------------------------- topology

void add_monopoles(CLI::App& app) {
    struct Args {
        std::string config = "config.json";
        std::string data;
        bool header = false;
        std::vector<double> lo, hi;
        std::vector<int> axes{0, 1, 2};
        DegeneracySearchOptions opts;
        bool charges = true;
        double charge_radius = -1.0;
        std::string out = "monopoles.json";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("monopoles", "Search a 3-dimensional slice for degeneracy points");
    sub->add_option("--config", args->config, "Configuration JSON")->capture_default_str()->check(CLI::ExistingFile);
    sub->add_option("--data", args->data, "Search the bounding box of this CSV")->check(CLI::ExistingFile);
    sub->add_flag("--header", args->header, "Input CSV has a header row");
    sub->add_option("--lo", args->lo, "Lower search-box corner in slice coordinates")->delimiter(',');
    sub->add_option("--hi", args->hi, "Upper search-box corner in slice coordinates")->delimiter(',');
    sub->add_option("--axes", args->axes, "Feature axes spanning the slice")->delimiter(',')->capture_default_str();
    sub->add_option("--starts", args->opts.n_starts, "Simplex starts")->capture_default_str();
    sub->add_option("--seed", args->opts.seed, "Seed for extra random starts")->capture_default_str();
    sub->add_option("--grid", args->opts.seed_grid, "Seeding grid points per axis")->capture_default_str();
    sub->add_flag("!--no-charges", args->charges, "Skip the Chern number of each point");
    sub->add_option("--charge-radius", args->charge_radius,
                    "Largest sphere radius for charges (default 0.1 x feature scale)");
    sub->add_option("--out", args->out, "Output JSON")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("monopoles", *sub);
        manifest.seed(args->opts.seed);
        manifest.input(args->config);
        const MatrixConfiguration cfg = read_configuration(args->config);
        const AffineSlice slice = slice_from_axes(args->axes, cfg.feature_dim());
        SearchBox3 box;
        if (!args->data.empty()) {
            manifest.input(args->data);
            box = slice_box(slice, read_rows(args->data, args->header));
        } else if (!args->lo.empty() && !args->hi.empty()) {
            box = {to_array3(args->lo, "--lo"), to_array3(args->hi, "--hi")};
        } else {
            throw ValidationError("monopoles: pass --data or both --lo and --hi");
        }
        auto points = find_degeneracy_points(cfg, slice, box, args->opts);
        if (args->charges && !points.empty()) {
            const double cap = args->charge_radius > 0.0 ? args->charge_radius : 0.1 * feature_scale(cfg);
            assign_charges(cfg, slice, points, cap);
        }
        json doc = json::array();
        for (const auto& p : points) doc.push_back(degeneracy_json(p));
        write_json(args->out, doc);
        manifest.output(args->out);
        manifest.write(args->out);
    });
}

void add_chern(CLI::App& app) {
    struct Args {
        std::string config = "config.json";
        std::vector<double> center{0.0, 0.0, 0.0};
        double radius = 0.5;
        std::vector<int> grid{24, 24};
        std::vector<int> axes{0, 1, 2};
        std::string out = "chern.json";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("chern", "First Chern number of the ground-state bundle over a sphere");
    sub->add_option("--config", args->config, "Configuration JSON")->capture_default_str()->check(CLI::ExistingFile);
    sub->add_option("--center", args->center, "Sphere center in slice coordinates")->delimiter(',')->capture_default_str();
    sub->add_option("--radius", args->radius, "Sphere radius")->capture_default_str();
    sub->add_option("--grid", args->grid, "n_theta,n_phi")->delimiter(',')->capture_default_str();
    sub->add_option("--axes", args->axes, "Feature axes spanning the slice")->delimiter(',')->capture_default_str();
    sub->add_option("--out", args->out, "Output JSON")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("chern", *sub);
        manifest.input(args->config);
        const MatrixConfiguration cfg = read_configuration(args->config);
        if (args->grid.size() != 2) throw ValidationError("--grid needs n_theta,n_phi");
        const auto center = to_array3(args->center, "--center");
        const ChernResult r = chern_number(cfg, slice_from_axes(args->axes, cfg.feature_dim()), center,
                                           args->radius, {args->grid[0], args->grid[1]});
        json doc;
        doc["center"] = center;
        doc["radius"] = args->radius;
        doc["grid"] = args->grid;
        doc["charge"] = r.charge;
        doc["raw"] = r.raw;
        doc["residual"] = r.residual;
        doc["min_gap"] = r.min_gap;
        write_json(args->out, doc);
        std::cout << "charge " << r.charge << "\n";
        manifest.output(args->out);
        manifest.write(args->out);
    });
}

// ---------------------------------------------------------------- oracle / classify

void add_oracle(CLI::App& app) {
    struct Args {
        std::string kind;
        int two_j = 1;
        double alpha = 1.0;
        Eigen::Index n = 3;
        std::string points;
        bool header = false;
        std::string out = "config.json";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("oracle", "Write an exactly known reference configuration");
    sub->add_option("kind", args->kind, "Geometry")
        ->required()
        ->check(CLI::IsMember({"fuzzy-sphere", "fuzzy-cpn", "fuzzy-torus", "commuting"}));
    sub->add_option("--two-j", args->two_j, "Twice the spin (fuzzy-sphere)")->capture_default_str();
    sub->add_option("--alpha", args->alpha, "Scale factor (fuzzy-sphere)")->capture_default_str();
    sub->add_option("--n", args->n, "Matrix size (fuzzy-cpn, fuzzy-torus)")->capture_default_str();
    sub->add_option("--points", args->points, "CSV of points (commuting)")->check(CLI::ExistingFile);
    sub->add_flag("--header", args->header, "Points CSV has a header row");
    sub->add_option("--out", args->out, "Output configuration JSON")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("oracle", *sub);
        const MatrixConfiguration cfg = [&] {
            if (args->kind == "fuzzy-sphere") return fuzzy_sphere(SpinLabel(args->two_j), args->alpha);
            if (args->kind == "fuzzy-cpn") return fuzzy_cpn(args->n);
            if (args->kind == "fuzzy-torus") return fuzzy_torus(args->n);
            if (args->points.empty()) throw ValidationError("oracle commuting: --points is required");
            manifest.input(args->points);
            return commuting_config(read_rows(args->points, args->header));
        }();
        write_configuration(args->out, cfg);
        manifest.output(args->out);
        manifest.write(args->out);
    });
}

void add_classify(CLI::App& app) {
    struct Args {
        std::string config = "config.json";
        std::string out = "classify.json";
    };
    auto args = std::make_shared<Args>();
    auto* sub = app.add_subcommand("classify", "Classical / almost-commutative / deep-quantum tag");
    sub->add_option("--config", args->config, "Configuration JSON")->capture_default_str()->check(CLI::ExistingFile);
    sub->add_option("--out", args->out, "Output JSON")->capture_default_str();
    sub->callback([args, sub] {
        RunManifest manifest("classify", *sub);
        manifest.input(args->config);
        const Classification c = classify_configuration(read_configuration(args->config));
        json doc;
        doc["tag"] = std::string(to_string(c.tag));
        doc["ratio"] = c.ratio;
        write_json(args->out, doc);
        std::cout << to_string(c.tag) << " " << c.ratio << "\n";
        manifest.output(args->out);
        manifest.write(args->out);
    });
}

}  // namespace
}  // namespace qgeom::cli

int main(int argc, char** argv) {
    using namespace qgeom;
    CLI::App app{"Learn and analyse quantum (matrix) geometries of point clouds", "qgeom"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qgeom::cli::kToolVersion);
    app.add_option_function<int>("--threads", [](int t) { set_thread_count(t); },
                                 "Worker threads (0: all cores)")
        ->envname("QGEOM_THREADS")
        ->check(CLI::NonNegativeNumber);
    app.add_flag_callback("--quiet", [] { spdlog::set_level(spdlog::level::warn); },
                          "Only log warnings and errors");

    cli::add_generate(app);
    cli::add_train(app);
    cli::add_cloud(app);
    cli::add_qg_cloud(app);
    cli::add_laplacian(app);
    cli::add_eigenmaps(app);
    cli::add_dimension(app);
    cli::add_monopoles(app);
    cli::add_chern(app);
    cli::add_components(app);
    cli::add_oracle(app);
    cli::add_classify(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        spdlog::error("{}", e.what());
        return 2;
    } catch (const NumericError& e) {
        spdlog::error("{}", e.what());
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        spdlog::error("{}", e.what());
        return 2;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 3;
    }
    return 0;
}
