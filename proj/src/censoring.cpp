#include "wged/censoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wged/errors.hpp"
#include "wged/wged_core.hpp"

namespace wged {

namespace {

int parse_int(std::string_view tok, std::string_view what) {
    if (tok.empty()) throw ParseError("scheme: empty " + std::string(what));
    int value = 0;
    for (char ch : tok) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ParseError("scheme: malformed " + std::string(what) + " '" + std::string(tok) + "'");
        value = value * 10 + (ch - '0');
        if (value > 100000000) throw ParseError("scheme: value out of range");
    }
    return value;
}

std::string strip_ws(std::string_view s) {
    std::string out;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
    return out;
}

}  // namespace

void CensoringScheme::validate() const {
    if (n < 1) throw ParseError("scheme: n must be >= 1");
    if (removals.empty()) throw ParseError("scheme: at least one item required");
    long long total = 0;
    for (int r : removals) {
        if (r < 0) throw ParseError("scheme: removals must be nonnegative");
        total += r;
    }
    const long long deficit = static_cast<long long>(n) - total - m();
    if (deficit != 0) {
        std::ostringstream os;
        os << "scheme: sum(R) + m = " << total + m() << " but n = " << n
           << " (deficit " << deficit << ")";
        throw ParseError(os.str());
    }
}

CensoringScheme CensoringScheme::parse(std::string_view text, int n) {
    CensoringScheme scheme;
    scheme.n = n;
    const std::string cleaned = strip_ws(text);
    if (cleaned.empty()) throw ParseError("scheme: empty string");
    size_t pos = 0;
    while (pos <= cleaned.size()) {
        const size_t comma = std::min(cleaned.find(',', pos), cleaned.size());
        const std::string_view item = std::string_view(cleaned).substr(pos, comma - pos);
        const size_t star = item.find('*');
        int value, repeat = 1;
        if (star == std::string_view::npos) {
            value = parse_int(item, "item");
        } else {
            value = parse_int(item.substr(0, star), "item value");
            repeat = parse_int(item.substr(star + 1), "repeat count");
            if (repeat < 1) throw ParseError("scheme: repeat count must be >= 1");
        }
        scheme.removals.insert(scheme.removals.end(), repeat, value);
        if (comma == cleaned.size()) break;
        pos = comma + 1;
    }
    scheme.validate();
    return scheme;
}

std::string CensoringScheme::render() const {
    std::ostringstream os;
    size_t i = 0;
    bool first = true;
    while (i < removals.size()) {
        size_t j = i;
        while (j < removals.size() && removals[j] == removals[i]) ++j;
        if (!first) os << ',';
        os << removals[i];
        if (j - i > 1) os << '*' << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

void CensoredSample::validate() const {
    scheme.validate();
    if (static_cast<int>(times.size()) != scheme.m())
        throw ParseError("sample: number of times must equal m");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw ParseError("sample: times must be positive and finite");
        if (t < prev) throw ParseError("sample: times must be nondecreasing");
        prev = t;
    }
}

SampleSummary compute_s_m(const CensoredSample& sample, double lambda, double theta) {
    sample.validate();
    if (!(lambda > 0.0) || !(theta > 0.0))
        throw std::domain_error("compute_s_m: lambda, theta must be positive");
    double sum = 0.0, comp = 0.0;
    for (int i = 0; i < sample.scheme.m(); ++i) {
        const double term = (sample.scheme.removals[i] + 1.0) *
                            transformed_time(lambda, theta, sample.times[i]);
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return {sample.scheme.m(), sum};
}

CensoredSample generate_sample(const CensoringScheme& scheme,
                               const std::function<double(double)>& quantile_fn,
                               RngStream& stream) {
    scheme.validate();
    const int m = scheme.m();
    // gamma_i = i + R_m + R_{m-1} + ... + R_{m-i+1}
    std::vector<double> gamma(m);
    {
        long long suffix = 0;
        for (int i = 1; i <= m; ++i) {
            suffix += scheme.removals[m - i];
            gamma[i - 1] = static_cast<double>(i + suffix);
        }
    }
    CensoredSample sample;
    sample.scheme = scheme;
    for (;;) {
        std::vector<double> v(m);
        for (int i = 0; i < m; ++i)
            v[i] = std::pow(stream.uniform(), 1.0 / gamma[i]);
        sample.times.assign(m, 0.0);
        double prod = 1.0;
        bool tie = false;
        double prev = 0.0;
        for (int i = 1; i <= m; ++i) {
            prod *= v[m - i];
            const double u = 1.0 - prod;
            const double x = quantile_fn(u);
            if (i > 1 && x == prev) { tie = true; break; }
            sample.times[i - 1] = x;
            prev = x;
        }
        if (!tie) break;  // exact double ties: redraw the whole sample
    }
    return sample;
}

CensoredSample apply_scheme_to_data(const CensoringScheme& scheme,
                                    const std::vector<double>& ordered_data) {
    scheme.validate();
    if (static_cast<int>(ordered_data.size()) < scheme.n)
        throw ParseError("apply_scheme_to_data: dataset smaller than n");
    CensoredSample sample;
    sample.scheme = scheme;
    size_t pos = 0;
    for (int r : scheme.removals) {
        sample.times.push_back(ordered_data[pos]);
        pos += 1 + static_cast<size_t>(r);
    }
    sample.validate();
    return sample;
}

}  // namespace wged
