#include "capax/cli.hpp"

#include <cstdlib>
#include <limits>

#include <CLI11.hpp>
#include <json.hpp>

#include "capax/error.hpp"
#include "capax/fga.hpp"
#include "capax/idempotents.hpp"
#include "capax/spaces.hpp"
#include "capax/summands.hpp"

namespace capax::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json int_json(const Int& v) {
    if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
    return v.str();
}

json capacity_json(const spaces::CapacityResult& c) {
    switch (c.kind) {
    case spaces::CapacityResult::Kind::Finite: return int_json(c.value);
    case spaces::CapacityResult::Kind::Infinite: return "inf";
    case spaces::CapacityResult::Kind::Unknown: return "unknown";
    }
    return nullptr;
}

std::string capacity_text(const spaces::CapacityResult& c) {
    switch (c.kind) {
    case spaces::CapacityResult::Kind::Finite: return c.value.str();
    case spaces::CapacityResult::Kind::Infinite: return "infinite";
    case spaces::CapacityResult::Kind::Unknown: return "unknown (" + c.reason + ")";
    }
    return "?";
}

int error_exit_code(const Error& e) {
    switch (e.code()) {
    case ErrorCode::Unsupported: return 2;
    case ErrorCode::ResourceLimit: return 3;
    default: return 1;
    }
}

struct Invocation {
    std::string command;
    std::string input;
    bool json_mode = false;

    ordered_json envelope(ordered_json result) const {
        return {{"command", command}, {"input", input}, {"status", "ok"}, {"result", std::move(result)}};
    }

    ordered_json error_envelope(const std::string& code, const std::string& message,
                                std::optional<std::size_t> offset) const {
        ordered_json err{{"code", code}, {"message", message}};
        if (offset) err["offset"] = *offset;
        return {{"command", command}, {"input", input}, {"status", "error"}, {"error", std::move(err)}};
    }
};

std::uint64_t env_oracle_cap() {
    if (const char* v = std::getenv("CAPAX_ORACLE_CAP")) {
        char* end = nullptr;
        const unsigned long long n = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && n > 0) return n;
    }
    return 64;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact capacity calculator for Moore and Eilenberg-MacLane spaces"};
    app.require_subcommand(1);

    bool json_mode = false;
    std::uint64_t oracle_cap = env_oracle_cap();
    app.add_flag("--json", json_mode, "machine-readable output");
    app.add_option("--oracle-cap", oracle_cap, "max group order for the brute-force oracle");

    std::string expr_text, group_text;
    bool require_finite = false;
    std::uint64_t max_degree = 8, max_order = 32;

    auto* cap = app.add_subcommand("capacity", "capacity of a space expression");
    cap->add_option("expr", expr_text)->required();
    cap->add_flag("--require-finite", require_finite, "fail unless the capacity is a finite number");

    auto* dom = app.add_subcommand("dominated", "homotopy types dominated by a space");
    dom->add_option("expr", expr_text)->required();

    auto* sum = app.add_subcommand("summands", "direct summands of a group up to isomorphism");
    sum->add_option("group", group_text)->required();

    auto* hom = app.add_subcommand("homology", "reduced homology table");
    hom->add_option("expr", expr_text)->required();
    hom->add_option("--max-degree", max_degree);

    auto* hot = app.add_subcommand("homotopy", "homotopy group table");
    hot->add_option("expr", expr_text)->required();
    hot->add_option("--max-degree", max_degree);

    auto* ppf = app.add_subcommand("pp-form", "pseudo-projective suspension form of a Moore atom");
    ppf->add_option("expr", expr_text)->required();

    auto* ide = app.add_subcommand("idempotents", "idempotent endomorphism report");
    ide->add_option("group", group_text)->required();

    auto* ver = app.add_subcommand("verify", "sweep: closed-form summand count vs brute-force oracle");
    ver->add_option("--max-order", max_order);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    Invocation inv{sub->get_name(), expr_text.empty() ? group_text : expr_text, json_mode};
    summands::OracleOptions oracle_opt;
    oracle_opt.order_cap = oracle_cap;

    int exit_code = 0;
    ordered_json env;
    std::string human;

    try {
        if (sub == cap) {
            const auto c = spaces::capacity(spaces::parse(expr_text));
            if (require_finite && c.kind != spaces::CapacityResult::Kind::Finite)
                throw Error(ErrorCode::Unsupported, "capacity is not finite: " + capacity_text(c));
            ordered_json result{{"capacity", capacity_json(c)}};
            if (c.kind == spaces::CapacityResult::Kind::Unknown) result["reason"] = c.reason;
            env = inv.envelope(std::move(result));
            human = "C(" + expr_text + ") = " + capacity_text(c) + "\n";
        } else if (sub == dom) {
            const auto types = spaces::dominated_types(spaces::parse(expr_text));
            ordered_json list = ordered_json::array();
            for (const auto& t : types) list.push_back(spaces::print(t));
            env = inv.envelope({{"count", types.size()}, {"types", std::move(list)}});
            human = std::to_string(types.size()) + " dominated homotopy types:\n";
            for (const auto& t : types) human += "  " + spaces::print(t) + "\n";
        } else if (sub == sum) {
            const auto g = fga::parse_group(group_text);
            const auto count = summands::count_summands(g);
            ordered_json result;
            result["count"] = count.is_infinite ? json("inf") : int_json(count.value);
            human = "summand classes of " + fga::to_string(g) + ": " +
                    (count.is_infinite ? "infinitely many" : count.value.str()) + "\n";
            if (!count.is_infinite) {
                std::vector<fga::AbelianGroup> classes;
                if (g.is_rationals()) classes = {fga::AbelianGroup::trivial(), g};
                else classes = summands::enumerate_summands(g);
                ordered_json list = ordered_json::array();
                for (const auto& c : classes) {
                    list.push_back(fga::to_string(c));
                    human += "  " + fga::to_string(c) + "\n";
                }
                result["classes"] = std::move(list);
            }
            env = inv.envelope(std::move(result));
        } else if (sub == hom || sub == hot) {
            const bool homology_mode = sub == hom;
            const auto e = spaces::parse(expr_text);
            ordered_json table;
            human = (homology_mode ? std::string("reduced homology of ") : std::string("homotopy groups of ")) +
                    expr_text + ":\n";
            for (std::uint64_t i = 1; i <= max_degree; ++i) {
                const auto g = homology_mode ? spaces::homology(e, i) : spaces::homotopy_group(e, i);
                table[std::to_string(i)] = fga::to_string(g);
                human += "  " + std::to_string(i) + ": " + fga::to_string(g) + "\n";
            }
            env = inv.envelope({{"max_degree", max_degree}, {"groups", std::move(table)}});
        } else if (sub == ppf) {
            const auto form = spaces::moore_pseudoprojective_form(spaces::parse(expr_text));
            env = inv.envelope({{"expr", spaces::print(form)}});
            human = spaces::print(form) + "\n";
        } else if (sub == ide) {
            const auto g = fga::parse_group(group_text);
            const auto report = idempotents::bound_report(g, oracle_opt);
            ordered_json result;
            result["count"] = report.count.is_infinite ? json("inf") : int_json(report.count.value);
            result["em_capacity"] = capacity_json(report.em_capacity);
            result["bound_holds"] = report.bound_holds ? json(*report.bound_holds) : json(nullptr);
            if (report.count.is_infinite) result["witness"] = report.count.witness;
            env = inv.envelope(std::move(result));
            human = "idempotent endomorphisms of " + fga::to_string(g) + ": " +
                    (report.count.is_infinite ? "infinitely many, family " + report.count.witness
                                              : report.count.value.str()) +
                    "\nC(K(" + fga::to_string(g) + ", 1)) = " + capacity_text(report.em_capacity) + "\n";
            if (report.bound_holds) human += std::string("bound holds: ") + (*report.bound_holds ? "yes" : "NO") + "\n";
        } else if (sub == ver) {
            oracle_opt.order_cap = std::max(oracle_opt.order_cap, max_order);
            std::uint64_t checked = 0, failed = 0;
            ordered_json rows = ordered_json::array();
            for (const auto& g : summands::enumerate_finite_abelian_groups(max_order)) {
                const Int formula = summands::count_summands(g).value;
                const std::uint64_t oracle = summands::oracle_count_summands(g, oracle_opt);
                const bool pass = formula == oracle;
                ++checked;
                if (!pass) ++failed;
                rows.push_back({{"group", fga::to_string(g)},
                                {"formula", int_json(formula)},
                                {"oracle", oracle},
                                {"pass", pass}});
                human += std::string(pass ? "pass" : "FAIL") + "  " + fga::to_string(g) + "  formula=" +
                         formula.str() + " oracle=" + std::to_string(oracle) + "\n";
            }
            human += std::to_string(checked) + " groups checked, " + std::to_string(failed) + " mismatches\n";
            env = inv.envelope({{"checked", checked}, {"mismatches", failed}, {"all_pass", failed == 0},
                                {"groups", std::move(rows)}});
            if (failed > 0) exit_code = 1;
        }
    } catch (const Error& e) {
        exit_code = error_exit_code(e);
        env = inv.error_envelope(e.code_name(), e.what(), e.offset());
        if (json_mode) {
            out << env.dump(2) << "\n";
        } else {
            err << "error (" << e.code_name() << ")";
            if (e.offset()) err << " at offset " << *e.offset();
            err << ": " << e.what() << "\n";
        }
        return exit_code;
    }

    if (json_mode) out << env.dump(2) << "\n";
    else out << human;
    return exit_code;
}

} // namespace capax::cli
