#include "varsep/json_io.hpp"

#include <algorithm>

#include "varsep/errors.hpp"
#include "varsep/expr.hpp"

namespace varsep {

Json polynomial_to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.sorted_terms()) {
        terms.push_back(Json{{"exp", e}, {"coef", c.to_string()}});
    }
    return Json{{"vars", p.vars()}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const Json& j) {
    try {
        if (!j.is_object() || !j.contains("vars") || !j.contains("terms")) {
            throw InvalidArgument("polynomial JSON needs \"vars\" and \"terms\"");
        }
        const auto vars = j.at("vars").get<VariableList>();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (std::find(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(i), vars[i]) !=
                vars.begin() + static_cast<std::ptrdiff_t>(i)) {
                throw InvalidArgument("duplicate variable '" + vars[i] + "'");
            }
        }
        Polynomial p(vars);
        for (const auto& term : j.at("terms")) {
            auto e = term.at("exp").get<ExponentVector>();
            if (e.size() != vars.size()) throw InvalidArgument("exponent vector length does not match \"vars\"");
            if (p.terms().contains(e)) throw InvalidArgument("duplicate term in polynomial JSON");
            p.add_term(e, Rational::parse(term.at("coef").get<std::string>()));
        }
        return p;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed polynomial JSON: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw InvalidArgument(std::string("malformed coefficient: ") + ex.what());
    } catch (const std::domain_error& ex) {
        throw InvalidArgument(std::string("malformed coefficient: ") + ex.what());
    }
}

Json partition_to_json(const Partition& partition, const VariableList& vars) {
    Json blocks = Json::array();
    for (const auto& block : partition.blocks()) {
        Json names = Json::array();
        for (std::size_t v : block) names.push_back(vars.at(v));
        blocks.push_back(std::move(names));
    }
    return blocks;
}

Json separation_to_json(const SeparationResult& result, const VariableList& vars) {
    Json blocks = Json::array();
    Json factors = Json::array();
    for (const auto& bf : result.factors) {
        Json names = Json::array();
        for (std::size_t v : bf.block) names.push_back(vars.at(v));
        blocks.push_back(std::move(names));
        factors.push_back(bf.factor.to_string());
    }
    return Json{{"schema", kSchema},
                {"constant", result.constant.to_string()},
                {"blocks", std::move(blocks)},
                {"factors", std::move(factors)},
                {"verified", result.verified}};
}

SeparationResult separation_from_json(const Json& j, const VariableList& vars) {
    try {
        if (j.at("schema").get<std::string>() != kSchema) throw InvalidArgument("unsupported schema");
        SeparationResult result;
        result.constant = Rational::parse(j.at("constant").get<std::string>());
        result.verified = j.at("verified").get<bool>();
        const auto& blocks = j.at("blocks");
        const auto& factors = j.at("factors");
        if (blocks.size() != factors.size()) throw InvalidArgument("\"blocks\" and \"factors\" differ in length");
        for (std::size_t s = 0; s < blocks.size(); ++s) {
            Partition::Block block;
            for (const auto& name : blocks[s]) {
                auto it = std::find(vars.begin(), vars.end(), name.get<std::string>());
                if (it == vars.end()) throw InvalidArgument("unknown variable in \"blocks\"");
                block.push_back(static_cast<std::size_t>(it - vars.begin()));
            }
            std::sort(block.begin(), block.end());
            result.factors.push_back({std::move(block), lower_to_polynomial(*parse(factors[s].get<std::string>()), vars)});
        }
        return result;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed separation JSON: ") + ex.what());
    }
}

Json report_to_json(const SepMatrixReport& report, const VariableList& vars) {
    return Json{{"schema", kSchema},
                {"vars", vars},
                {"blocks", partition_to_json(report.partition, vars)},
                {"vanishes", report.vanishes}};
}

Json numeric_verdict_to_json(const NumericVerdict& verdict) {
    return Json{{"schema", kSchema},
                {"vars", verdict.vars},
                {"verdict", std::string(to_string(verdict.kind))},
                {"blocks", partition_to_json(verdict.partition, verdict.vars)},
                {"tolerance", verdict.tolerance},
                {"anchor", verdict.anchor},
                {"residuals", verdict.residuals},
                {"samples", verdict.samples},
                {"skipped", verdict.skipped}};
}

std::string emit_json(const Json& j) { return j.dump(); }

}  // namespace varsep
