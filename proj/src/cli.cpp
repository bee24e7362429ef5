#include "hdx/cli.hpp"

#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdx/errors.hpp"
#include "hdx/generators.hpp"
#include "hdx/io.hpp"
#include "hdx/spectra.hpp"
#include "hdx/theorems.hpp"

namespace hdx {

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson partitionSidesJson(const Partition& p) {
    OrderedJson sides = OrderedJson::array();
    for (const auto& block : p.sides()) {
        OrderedJson side = OrderedJson::array();
        for (VertexId v : block) side.push_back(v);
        sides.push_back(std::move(side));
    }
    return sides;
}

std::string sidesText(const Partition& p) {
    std::string text;
    for (const auto& block : p.sides()) {
        text += "{";
        for (size_t i = 0; i < block.size(); ++i) {
            if (i > 0) text += ",";
            text += std::to_string(block[i]);
        }
        text += "} ";
    }
    if (!text.empty()) text.pop_back();
    return text;
}

void runAnalyze(const ComplexDocument& doc, const std::string& format, std::ostream& out) {
    const SimplicialComplex& x = doc.complex;
    const int n = x.dimension();
    const bool balanced = verifyBalanced(x, doc.weight).empty();
    const auto gallery = x.galleryConnectivity();
    const auto links = x.checkAllLinksConnected();
    std::optional<Partition> partition = doc.partition;
    std::string partitionSource = doc.partition ? "document" : "none";
    if (!partition && gallery.connected) {
        if (auto detected = x.detectPartition()) {
            partition = std::move(detected);
            partitionSource = "detected";
        }
    }
    const auto betti = bettiNumbers(x);
    if (format == "json") {
        OrderedJson j;
        j["command"] = "analyze";
        j["dimension"] = n;
        OrderedJson counts = OrderedJson::array();
        for (int k = -1; k <= n; ++k) counts.push_back(x.count(k));
        j["counts"] = std::move(counts);
        j["weight_at_empty"] = roundNumber(doc.weight.at(-1, 0));
        j["balanced"] = balanced;
        j["gallery_connected"] = gallery.connected;
        j["component_count"] = gallery.componentCount;
        j["all_links_connected"] = links.allConnected;
        j["partition_source"] = partitionSource;
        j["partition_sides"] = partition ? partitionSidesJson(*partition) : OrderedJson(nullptr);
        OrderedJson bettiJson = OrderedJson::array();
        for (int b : betti) bettiJson.push_back(b);
        j["betti"] = std::move(bettiJson);
        out << j.dump(2) << "\n";
        return;
    }
    out << "dimension: " << n << "\n";
    out << "counts by level (-1.." << n << "):";
    for (int k = -1; k <= n; ++k) out << " " << x.count(k);
    out << "\n";
    out << "weight at empty simplex: " << formatNumber(doc.weight.at(-1, 0)) << "\n";
    out << "balanced: " << (balanced ? "yes" : "no") << "\n";
    out << "gallery connected: " << (gallery.connected ? "yes" : "no") << " ("
        << gallery.componentCount << (gallery.componentCount == 1 ? " component" : " components")
        << ")\n";
    out << "all links connected: " << (links.allConnected ? "yes" : "no") << "\n";
    if (partition)
        out << "partition (" << partitionSource << "): " << sidesText(*partition) << "\n";
    else
        out << "partition: none\n";
    out << "betti:";
    for (int b : betti) out << " " << b;
    out << "\n";
}

void runSpectrum(const ComplexDocument& doc, int degree, const std::string& opName,
                 const std::vector<VertexId>& linkVertices, const std::string& format,
                 std::ostream& out) {
    const SimplicialComplex* x = &doc.complex;
    const WeightFunction* m = &doc.weight;
    SimplicialComplex linkComplex;
    WeightFunction linkW;
    std::string linkLabel;
    if (!linkVertices.empty()) {
        const Simplex tau(linkVertices);
        linkComplex = doc.complex.link(tau);
        linkW = linkWeight(doc.complex, doc.weight, tau, linkComplex);
        x = &linkComplex;
        m = &linkW;
        linkLabel = tau.toString();
    }
    LinearOperator op = opName == "up"     ? buildUpLaplacian(*x, *m, degree)
                        : opName == "down" ? buildDownLaplacian(*x, *m, degree)
                                           : buildFullLaplacian(*x, *m, degree);
    const SpectralReport rep = eigSelfadjoint(op);
    if (format == "json") {
        OrderedJson j;
        j["command"] = "spectrum";
        j["operator"] = rep.operatorName;
        j["degree"] = degree;
        j["link"] = linkLabel.empty() ? OrderedJson(nullptr) : OrderedJson(linkLabel);
        OrderedJson vals = OrderedJson::array();
        for (int i = 0; i < rep.eigenvalues.size(); ++i)
            vals.push_back(roundNumber(rep.eigenvalues[i]));
        j["eigenvalues"] = std::move(vals);
        j["zero_multiplicity"] = rep.zeroMultiplicity();
        const auto gap = rep.smallestPositive();
        const auto top = rep.largest();
        j["smallest_positive"] = gap ? OrderedJson(roundNumber(*gap)) : OrderedJson(nullptr);
        j["largest"] = top ? OrderedJson(roundNumber(*top)) : OrderedJson(nullptr);
        out << j.dump(2) << "\n";
        return;
    }
    out << "operator: " << rep.operatorName << "\n";
    if (!linkLabel.empty()) out << "link: " << linkLabel << "\n";
    out << "eigenvalues:";
    for (int i = 0; i < rep.eigenvalues.size(); ++i)
        out << " " << formatNumber(rep.eigenvalues[i]);
    out << "\n";
    out << "zero multiplicity: " << rep.zeroMultiplicity() << "\n";
    const auto gap = rep.smallestPositive();
    const auto top = rep.largest();
    out << "smallest positive: " << (gap ? formatNumber(*gap) : "none") << "\n";
    out << "largest: " << (top ? formatNumber(*top) : "none") << "\n";
}

OrderedJson reportToJson(const VerificationReport& r) {
    OrderedJson j;
    j["id"] = r.id;
    j["status"] = verifyStatusName(r.status);
    OrderedJson hyps = OrderedJson::array();
    for (const auto& h : r.hypotheses) {
        OrderedJson hj;
        hj["description"] = h.description;
        hj["met"] = h.met;
        hyps.push_back(std::move(hj));
    }
    j["hypotheses"] = std::move(hyps);
    OrderedJson checks = OrderedJson::array();
    for (const auto& c : r.checks) {
        OrderedJson cj;
        cj["subject"] = c.subject;
        cj["bound"] = roundNumber(c.bound);
        cj["measured"] = roundNumber(c.measured);
        cj["slack"] = roundNumber(c.slack);
        cj["ok"] = c.ok;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    OrderedJson notes = OrderedJson::array();
    for (const auto& note : r.notes) notes.push_back(note);
    j["notes"] = std::move(notes);
    if (!r.checks.empty()) j["worst_slack"] = roundNumber(r.worstSlack());
    return j;
}

void renderReportText(const VerificationReport& r, std::ostream& out) {
    out << "[" << verifyStatusName(r.status) << "] " << r.id << " (" << r.checks.size()
        << (r.checks.size() == 1 ? " check" : " checks");
    if (!r.checks.empty()) out << "; worst slack " << formatNumber(r.worstSlack());
    out << ")\n";
    for (const auto& h : r.hypotheses)
        if (!h.met) out << "  hypothesis not met: " << h.description << "\n";
    for (const auto& c : r.checks)
        if (!c.ok)
            out << "  check failed: " << c.subject << " (bound " << formatNumber(c.bound)
                << ", measured " << formatNumber(c.measured) << ", slack "
                << formatNumber(c.slack) << ")\n";
    for (const auto& note : r.notes) out << "  note: " << note << "\n";
}

int runVerify(const ComplexDocument& doc, const std::optional<std::string>& theorem,
              const std::optional<double>& lambda, const std::optional<double>& kappa,
              const HarnessOptions& options, const std::string& format, std::ostream& out) {
    const SimplicialComplex& x = doc.complex;
    const WeightFunction& m = doc.weight;
    const int n = x.dimension();
    // Partite statements use the document's coloring, or a detected one.
    std::optional<Partition> detected;
    std::string partitionSource = doc.partition ? "document" : "none";
    if (!doc.partition && x.galleryConnectivity().connected) {
        if ((detected = x.detectPartition())) partitionSource = "detected";
    }
    const Partition* pp = doc.partition ? &*doc.partition
                          : detected    ? &*detected
                                        : nullptr;
    std::vector<VerificationReport> reports;

    auto missingPartition = [&](const std::string& id) {
        VerificationReport r;
        r.id = id;
        r.addHypothesis("document provides a partition", false);
        r.finalize();
        reports.push_back(std::move(r));
    };
    auto pushSymmetry = [&](const Partition& p) {
        try {
            reports.push_back(verifyPartiteSymmetry(x, m, p, options));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TrivialComplex) throw;
            VerificationReport skip;
            skip.id = "partite-symmetry";
            skip.status = VerifyStatus::NotApplicable;
            skip.notes.push_back(e.what());
            reports.push_back(std::move(skip));
        }
    };

    if (!theorem) {
        reports = runBattery(x, m, pp, options);
    } else if (*theorem == "structural-identities") {
        reports.push_back(verifyStructuralIdentities(x, m, options, pp));
    } else if (*theorem == "trickle-down") {
        reports.push_back(verifyTrickleDown(x, m, options));
    } else if (*theorem == "garland-interval") {
        for (int k = 0; k <= n - 1; ++k)
            reports.push_back(verifyGarlandInterval(x, m, k, options));
    } else if (*theorem == "garland-norm") {
        for (int k = 0; k <= n - 1; ++k)
            reports.push_back(verifyGarlandNorm(x, m, k, options));
    } else if (*theorem == "kappa-propagation") {
        reports.push_back(verifyKappaPropagation(x, m, options));
    } else if (*theorem == "partite-top-eigenspace") {
        if (pp) reports.push_back(verifyPartiteTopEigenspace(x, m, *pp, options));
        else missingPartition(*theorem);
    } else if (*theorem == "partite-symmetry") {
        if (pp) pushSymmetry(*pp);
        else missingPartition(*theorem);
    } else if (*theorem == "partite-descent") {
        if (pp) reports.push_back(verifyPartiteDescent(x, m, *pp, options));
        else missingPartition(*theorem);
    } else if (*theorem == "partite-contraction") {
        if (pp)
            for (int k = 0; k <= n - 1; ++k)
                reports.push_back(verifyPartiteContraction(x, m, *pp, k, options));
        else missingPartition(*theorem);
    } else if (*theorem == "local-expansion") {
        if (!lambda || !kappa)
            fail(ErrorCode::UsageFailure, "local-expansion requires --lambda and --kappa");
        reports.push_back(checkLocalExpansion(x, m, *lambda, *kappa, options));
    } else {
        fail(ErrorCode::UsageFailure, "unknown theorem id \"" + *theorem + "\"");
    }

    bool anyViolated = false;
    bool anyUnmet = false;
    for (const auto& r : reports) {
        anyViolated = anyViolated || r.status == VerifyStatus::BoundViolated;
        anyUnmet = anyUnmet || r.status == VerifyStatus::HypothesisNotMet;
    }
    const int exitCode = anyViolated ? 4 : anyUnmet ? 3 : 0;
    const std::string overall =
        anyViolated ? "bound-violated" : anyUnmet ? "hypothesis-not-met" : "passed";

    if (format == "json") {
        OrderedJson j;
        j["command"] = "verify";
        j["tolerance"] = roundNumber(options.tolerance);
        j["seed"] = options.seed;
        j["partition_source"] = partitionSource;
        OrderedJson rs = OrderedJson::array();
        for (const auto& r : reports) rs.push_back(reportToJson(r));
        j["reports"] = std::move(rs);
        j["overall"] = overall;
        j["exit_code"] = exitCode;
        out << j.dump(2) << "\n";
    } else {
        out << "partition: " << partitionSource << "\n";
        for (const auto& r : reports) renderReportText(r, out);
        out << "overall: " << overall << " (exit " << exitCode << ")\n";
    }
    return exitCode;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spectral toolkit for weighted simplicial complexes"};
    app.require_subcommand(1);

    std::string inputPath;
    std::string format = "text";

    auto* analyze = app.add_subcommand("analyze", "structural summary of a complex");
    analyze->add_option("input", inputPath, "complex document (JSON)")->required();
    analyze->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    int degree = 0;
    std::string opName = "full";
    std::vector<VertexId> linkVertices;
    auto* spectrum = app.add_subcommand("spectrum", "Laplacian eigenvalues at one degree");
    spectrum->add_option("input", inputPath, "complex document (JSON)")->required();
    spectrum->add_option("--degree", degree, "cochain degree")->required();
    spectrum->add_option("--operator", opName, "which Laplacian part")
        ->check(CLI::IsMember({"up", "down", "full"}));
    spectrum
        ->add_option("--link", linkVertices,
                     "take the spectrum on the link of these vertices")
        ->delimiter(',');
    spectrum->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::optional<std::string> theorem;
    std::optional<double> lambdaOpt;
    std::optional<double> kappaOpt;
    HarnessOptions harness;
    auto* verify = app.add_subcommand("verify", "run spectral statements against a complex");
    verify->add_option("input", inputPath, "complex document (JSON)")->required();
    verify->add_option("--theorem", theorem,
                       "one statement id instead of the whole battery");
    verify->add_option("--lambda", lambdaOpt, "window lower edge for local-expansion");
    verify->add_option("--kappa", kappaOpt, "window upper edge for local-expansion");
    verify->add_option("--tolerance", harness.tolerance, "bound comparison tolerance");
    verify->add_option("--seed", harness.seed, "seed for the sampled identities");
    verify->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string kind;
    int genDimension = 2;
    int genVertices = 0;
    double genProbability = 0.5;
    std::uint64_t genSeed = kDefaultSeed;
    std::vector<int> genSides;
    std::string outputPath;
    const std::vector<std::string> kinds = {"simplex", "complete", "multipartite",
                                            "cross-polytope", "random"};
    std::string kindFlag;
    auto* generate = app.add_subcommand("generate", "emit a complex document");
    generate
        ->add_option("kind", kind,
                     "simplex | complete | multipartite | cross-polytope | random")
        ->check(CLI::IsMember(kinds));
    generate->add_option("--family", kindFlag, "family name, same choices as the positional")
        ->check(CLI::IsMember(kinds));
    generate->add_option("--dimension", genDimension, "facet dimension");
    generate->add_option("--vertices", genVertices, "vertex count");
    generate->add_option("--probability", genProbability, "facet keep probability");
    generate->add_option("--seed", genSeed, "random draw seed");
    generate->add_option("--sides", genSides, "multipartite side sizes")->delimiter(',');
    generate->add_option("--output,--out", outputPath,
                         "write the document here instead of stdout");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hdx");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (app.got_subcommand(analyze)) {
            runAnalyze(parseComplexDocument(readTextFile(inputPath)), format, out);
            return 0;
        }
        if (app.got_subcommand(spectrum)) {
            runSpectrum(parseComplexDocument(readTextFile(inputPath)), degree, opName,
                        linkVertices, format, out);
            return 0;
        }
        if (app.got_subcommand(verify)) {
            return runVerify(parseComplexDocument(readTextFile(inputPath)), theorem,
                             lambdaOpt, kappaOpt, harness, format, out);
        }
        // generate
        if (kind.empty() && !kindFlag.empty()) kind = kindFlag;
        if (kind.empty())
            fail(ErrorCode::UsageFailure, "generate needs a family (positional or --family)");
        if (!kindFlag.empty() && kindFlag != kind)
            fail(ErrorCode::UsageFailure, "positional family and --family disagree");
        ComplexDocument doc;
        OrderedJson meta;
        meta["generator"] = kind;
        if (kind == "simplex") {
            meta["dimension"] = genDimension;
            doc = ComplexDocument::fromComplex(singleSimplex(genDimension), std::nullopt,
                                               std::nullopt, std::move(meta));
        } else if (kind == "complete") {
            meta["vertices"] = genVertices;
            meta["dimension"] = genDimension;
            doc = ComplexDocument::fromComplex(completeComplex(genVertices, genDimension),
                                               std::nullopt, std::nullopt, std::move(meta));
        } else if (kind == "multipartite") {
            OrderedJson sides = OrderedJson::array();
            for (int s : genSides) sides.push_back(s);
            meta["sides"] = std::move(sides);
            PartiteComplex pc = completeMultipartite(genSides);
            doc = ComplexDocument::fromComplex(std::move(pc.complex), std::nullopt,
                                               std::move(pc.partition), std::move(meta));
        } else if (kind == "cross-polytope") {
            meta["dimension"] = genDimension;
            PartiteComplex pc = crossPolytope(genDimension);
            doc = ComplexDocument::fromComplex(std::move(pc.complex), std::nullopt,
                                               std::move(pc.partition), std::move(meta));
        } else {
            meta["vertices"] = genVertices;
            meta["dimension"] = genDimension;
            meta["probability"] = roundNumber(genProbability);
            meta["seed"] = genSeed;
            RandomComplexResult result =
                randomPureComplex(genVertices, genDimension, genProbability, genSeed);
            if (!result.accepted) {
                err << "rejected: " << result.reason << "\n";
                return 3;
            }
            doc = ComplexDocument::fromComplex(std::move(*result.complex), std::nullopt,
                                               std::nullopt, std::move(meta));
        }
        const std::string text = serializeComplexDocument(doc);
        if (outputPath.empty())
            out << text;
        else
            writeTextFile(outputPath, text);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::UsageFailure ? 1 : 2;
    }
}

}  // namespace hdx
