#include "avs/metrics.hpp"

#include <fstream>
#include <sstream>

#include "avs/errors.hpp"

namespace avs {

MetricsReport compute_metrics(std::span<const EpisodeResult> results) {
    MetricsReport report;
    report.n = static_cast<int>(results.size());
    int successes = 0;
    long long success_steps = 0;
    double spl_sum = 0.0;
    for (const EpisodeResult& r : results) {
        if (r.success) {
            ++successes;
            success_steps += r.steps_taken;
        }
        spl_sum += r.spl_term();
        switch (r.failure) {
        case FailureClass::Localisation: ++report.fail_localisation; break;
        case FailureClass::Docking: ++report.fail_docking; break;
        case FailureClass::Other: ++report.fail_other; break;
        case FailureClass::None: break;
        }
    }
    if (report.n > 0) {
        report.sr = static_cast<double>(successes) / report.n;
        report.spl = spl_sum / report.n;
    }
    if (successes > 0)
        report.apl = static_cast<double>(success_steps) / successes;
    return report;
}

std::string results_csv_header() {
    return "scenario,variant,target,seed,success,steps,shortest,spl_term,failure_class,"
           "exit_step,docking_steps";
}

std::string result_csv_row(const EpisodeResult& r) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    out << r.scenario << ',' << r.variant << ',' << r.target << ',' << r.seed << ','
        << (r.success ? 1 : 0) << ',' << r.steps_taken << ',' << r.shortest_possible << ','
        << r.spl_term() << ',' << failure_name(r.failure) << ',' << r.exit_step << ','
        << r.docking_steps;
    return out.str();
}

void write_results_csv(const std::string& path, std::span<const EpisodeResult> rows) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write CSV file: " + path);
    out << results_csv_header() << '\n';
    for (const EpisodeResult& r : rows)
        out << result_csv_row(r) << '\n';
}

std::vector<EpisodeResult> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open CSV file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty CSV file: " + path);
    if (line != results_csv_header())
        throw ParseError("unexpected CSV header in " + path);

    std::vector<EpisodeResult> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (fields.size() != 11)
            throw ParseError("malformed CSV row: " + line);
        EpisodeResult r;
        r.scenario = fields[0];
        r.variant = fields[1];
        r.target = fields[2];
        r.seed = std::stoull(fields[3]);
        r.success = fields[4] == "1";
        r.steps_taken = std::stoi(fields[5]);
        r.shortest_possible = std::stoi(fields[6]);
        // fields[7] (spl_term) is derived; recomputed from the stored values
        r.failure = parse_failure(fields[8]);
        r.exit_step = std::stoi(fields[9]);
        r.docking_steps = std::stoi(fields[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace avs
