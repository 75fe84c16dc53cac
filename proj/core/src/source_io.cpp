#include "secretshare/source_io.hpp"

#include <fstream>
#include <map>

#include "secretshare/access_structure.hpp"

namespace secretshare {

namespace {

Alphabet parse_alphabet(const nlohmann::json& j) {
    Alphabet a;
    a.name = j.at("name").get<std::string>();
    for (const auto& s : j.at("symbols")) a.symbols.push_back(s.get<std::string>());
    a.validate();
    return a;
}

}  // namespace

JointSource parse_source_json(const nlohmann::json& j) {
    std::vector<Alphabet> parts, dealers;
    for (const auto& p : j.at("participants")) parts.push_back(parse_alphabet(p));
    for (const auto& d : j.at("dealers")) dealers.push_back(parse_alphabet(d));
    if (parts.empty() || dealers.empty())
        throw ValidationError("source needs at least one participant and one dealer");

    std::vector<const Alphabet*> order;
    for (const auto& a : parts) order.push_back(&a);
    for (const auto& a : dealers) order.push_back(&a);

    std::size_t cells = 1;
    for (const auto* a : order) {
        if (cells > kDenseTableGuard / static_cast<std::size_t>(a->size()))
            throw GuardExceeded("source product space exceeds " +
                                std::to_string(kDenseTableGuard) + " cells");
        cells *= static_cast<std::size_t>(a->size());
    }

    std::vector<double> pmf(cells, 0.0);
    double total = 0.0;
    for (const auto& entry : j.at("pmf")) {
        const auto& outcome = entry.at("outcome");
        if (outcome.size() != order.size())
            throw ValidationError("pmf outcome arity " + std::to_string(outcome.size()) +
                                  " does not match " + std::to_string(order.size()) +
                                  " variables");
        std::size_t idx = 0;
        std::size_t stride = 1;
        for (std::size_t v = 0; v < order.size(); ++v) {
            const std::string label = outcome[v].get<std::string>();
            const auto& syms = order[v]->symbols;
            auto it = std::find(syms.begin(), syms.end(), label);
            if (it == syms.end())
                throw ValidationError("unknown symbol '" + label + "' for variable " +
                                      order[v]->name);
            idx += stride * static_cast<std::size_t>(it - syms.begin());
            stride *= syms.size();
        }
        double p = entry.at("p").get<double>();
        if (p < 0.0) throw ValidationError("negative probability in pmf");
        pmf[idx] += p;
        total += p;
    }
    if (total < 1.0 - 1e-9 || total > 1.0 + 1e-9)
        throw ValidationError("pmf total " + std::to_string(total) + " outside [1-1e-9, 1+1e-9]");
    // Renormalize the 1e-9 slack so the strict table invariant holds.
    for (auto& p : pmf) p /= total;
    return JointSource(std::move(parts), std::move(dealers), std::move(pmf));
}

nlohmann::json source_to_json(const JointSource& src) {
    nlohmann::json j;
    j["participants"] = nlohmann::json::array();
    j["dealers"] = nlohmann::json::array();
    for (int l = 0; l < src.num_participants(); ++l) {
        const auto& a = src.participant_alphabet(l);
        j["participants"].push_back({{"name", a.name}, {"symbols", a.symbols}});
    }
    for (int d = 0; d < src.num_dealers(); ++d) {
        const auto& a = src.dealer_alphabet(d);
        j["dealers"].push_back({{"name", a.name}, {"symbols", a.symbols}});
    }
    j["pmf"] = nlohmann::json::array();
    for (std::size_t cell = 0; cell < src.table_size(); ++cell) {
        double p = src.pmf()[cell];
        if (p <= 0.0) continue;
        auto symbols = src.cell_symbols(cell);
        nlohmann::json outcome = nlohmann::json::array();
        for (int v = 0; v < src.num_variables(); ++v) {
            const auto& a = v < src.num_participants()
                                ? src.participant_alphabet(v)
                                : src.dealer_alphabet(v - src.num_participants());
            outcome.push_back(a.symbols[static_cast<std::size_t>(symbols[v])]);
        }
        j["pmf"].push_back({{"outcome", outcome}, {"p", p}});
    }
    return j;
}

JointSource load_source_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open source file '" + path + "'");
    nlohmann::json j;
    in >> j;
    return parse_source_json(j);
}

void save_source_file(const JointSource& src, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write source file '" + path + "'");
    out << source_to_json(src).dump(2) << "\n";
}

AccessStructure parse_access_spec(const std::string& text, int L) {
    if (text == "aon") return all_or_nothing(L);
    if (text.rfind("thr:", 0) == 0) {
        int tl = 0, tt = 0, tz = 0;
        if (std::sscanf(text.c_str(), "thr:%d:%d:%d", &tl, &tt, &tz) != 3)
            throw ValidationError("threshold spec must look like thr:<L>:<t>:<z>");
        if (L != 0 && tl != L)
            throw ValidationError("threshold spec participant count " + std::to_string(tl) +
                                  " does not match source (" + std::to_string(L) + ")");
        return threshold_structure(tl, ThresholdParams{tt, tz});
    }
    if (text.rfind("min:", 0) == 0) {
        std::vector<SubsetMask> gens;
        std::string body = text.substr(4);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t end = body.find(';', pos);
            std::string set = body.substr(pos, end == std::string::npos ? end : end - pos);
            SubsetMask mask = 0;
            std::size_t p2 = 0;
            while (p2 < set.size()) {
                std::size_t e2 = set.find(',', p2);
                std::string tok = set.substr(p2, e2 == std::string::npos ? e2 : e2 - p2);
                if (!tok.empty()) {
                    int idx = std::stoi(tok);
                    if (idx < 1 || idx > L)
                        throw ValidationError("participant index " + tok + " out of range");
                    mask |= SubsetMask{1} << (idx - 1);
                }
                if (e2 == std::string::npos) break;
                p2 = e2 + 1;
            }
            gens.push_back(mask);
            if (end == std::string::npos) break;
            pos = end + 1;
        }
        return monotone_closure(gens, L);
    }
    throw ValidationError("unknown access spec '" + text + "' (want aon, thr:..., or min:...)");
}

}  // namespace secretshare
