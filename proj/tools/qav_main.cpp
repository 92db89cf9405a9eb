#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qav/io.hpp"

namespace {

using qav::Json;

std::vector<qav::Int> parse_orders(const std::string& s, int r) {
    std::vector<qav::Int> orders;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            orders.emplace_back(tok);
        } catch (const std::invalid_argument&) {
            throw qav::ValidationError("malformed order list: " + s);
        }
    }
    if (orders.size() == 1 && r > 1) orders.assign(r, orders[0]);
    if (static_cast<int>(orders.size()) != r)
        throw qav::ValidationError("--orders needs one modulus per component (or a single one)");
    for (const qav::Int& m : orders)
        if (m < 1) throw qav::ValidationError("orders must be >= 1");
    return orders;
}

const qav::Curve& require_curve(const qav::InputDocument& doc) {
    if (doc.kind != qav::InputDocument::Kind::Curve)
        throw qav::ValidationError("this command requires a curve document");
    return doc.curve;
}

void emit(const Json& report, const std::string& json_out) {
    const std::string text = qav::dump_report(report);
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw qav::ValidationError("cannot open output file: " + json_out);
        out << text;
    }
    std::cout << text;
}

int run(int argc, char** argv) {
    CLI::App app{"characteristic varieties, abelian covers and Milnor fibers of plane curves"};
    app.require_subcommand(1);

    std::string input_path, orders_str, quotient_path, json_out;
    int degree = 0;
    bool fast = false;
    unsigned long long seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("input", input_path, "input JSON document")->required();
        cmd->add_flag("--fast", fast, "enable the superabundance-vanishing pruning");
        cmd->add_option("--seed", seed, "seed for the deterministic samplers");
        cmd->add_option("--json", json_out, "also write the report to this file");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "faces, components and resonance check");
    add_common(analyze);
    CLI::App* faces = app.add_subcommand("faces", "faces of quasiadjunction only");
    add_common(faces);
    CLI::App* covers = app.add_subcommand("covers", "abelian cover invariants");
    add_common(covers);
    covers->add_option("--orders", orders_str, "comma-separated branching orders")->required();
    covers->add_option("--quotient", quotient_path, "quotient cover description file");
    CLI::App* milnor = app.add_subcommand("milnor", "Milnor fiber first Betti number");
    add_common(milnor);
    CLI::App* resonance = app.add_subcommand("resonance", "resonance components and Aomoto H1");
    add_common(resonance);
    CLI::App* super = app.add_subcommand("superabundance", "h1 of a fat-point scheme");
    add_common(super);
    super->add_option("--degree", degree, "twist degree n")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const qav::InputDocument doc = qav::parse_input_file(input_path);
    Json report;
    report["schema"] = 1;

    if (super->parsed()) {
        if (doc.kind != qav::InputDocument::Kind::Scheme)
            throw qav::ValidationError("superabundance requires a scheme document");
        report["command"] = "superabundance";
        qav::CohomologyResult res = qav::superabundance(degree, doc.scheme);
        report["degree"] = res.degree;
        report["h0"] = res.h0;
        report["chi"] = res.chi;
        report["h1"] = res.h1;
        report["conditions"] = res.conditions;
        emit(report, json_out);
        return 0;
    }

    const qav::Curve& curve = require_curve(doc);

    if (resonance->parsed()) {
        report["command"] = "resonance";
        qav::validate_curve(curve);
        qav::Incidence inc = qav::build_incidence(curve);
        report["curve"] = qav::curve_summary_json(curve, inc);
        report["resonance_components"] =
            qav::resonance_to_json(qav::resonance_components(curve, inc, seed));
        emit(report, json_out);
        return 0;
    }

    qav::Analysis an = qav::analyze_curve(curve, fast);

    if (faces->parsed()) {
        report["command"] = "faces";
        report["curve"] = qav::curve_summary_json(an.curve, an.inc);
        Json fj = Json::array();
        for (uint32_t mask : an.masks)
            for (const qav::FaceResult& fr : an.faces.at(mask))
                fj.push_back(qav::face_to_json(fr));
        report["faces"] = fj;
        report["warnings"] = an.warnings;
    } else if (analyze->parsed()) {
        report["command"] = "analyze";
        report.update(qav::analysis_to_json(an));
        if (curve.mode == qav::CurveMode::Lines && curve.r() <= 9) {
            qav::Thm54Report check = qav::verify_thm54(an, seed);
            Json cj;
            cj["ok"] = check.ok;
            cj["characteristic_components"] = check.n_char;
            cj["resonance_components"] = check.n_resonance;
            cj["details"] = check.details;
            report["resonance_check"] = cj;
        } else if (curve.mode == qav::CurveMode::Lines) {
            report["resonance_check"] =
                Json{{"skipped", "arrangement too large for the resonance sweep"}};
        }
    } else if (covers->parsed()) {
        report["command"] = "covers";
        report["curve"] = qav::curve_summary_json(an.curve, an.inc);
        std::vector<qav::Int> orders = parse_orders(orders_str, curve.r());
        Json oj = Json::array();
        for (const qav::Int& m : orders) oj.push_back(m.get_str());
        report["orders"] = oj;
        report["irregularity"] = qav::irregularity(an, orders).get_str();
        report["betti_branched"] = qav::betti_branched(an, orders).get_str();
        report["betti_unbranched"] = qav::betti_unbranched(an, orders).get_str();
        if (!quotient_path.empty()) {
            qav::QuotientCover cover = qav::parse_quotient_file(quotient_path, curve.r());
            std::vector<std::string> warnings;
            qav::Int b1 = qav::quotient_betti_branched(an, cover, &warnings);
            Json qj;
            qj["betti_branched"] = b1.get_str();
            if (b1 % 2 == 0) qj["irregularity"] = qav::Int(b1 / 2).get_str();
            qj["warnings"] = warnings;
            report["quotient"] = qj;
        }
        report["warnings"] = an.warnings;
    } else if (milnor->parsed()) {
        report["command"] = "milnor";
        report["curve"] = qav::curve_summary_json(an.curve, an.inc);
        report["milnor_b1"] = qav::milnor_b1(an).get_str();
        report["warnings"] = an.warnings;
    }

    emit(report, json_out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qav::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const qav::UnsupportedError& e) {
        std::cerr << "unsupported input: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
