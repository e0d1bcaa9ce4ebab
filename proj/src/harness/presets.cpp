#include "lenssplit/harness/presets.hpp"

#include <algorithm>

namespace lenssplit::harness {

namespace {

// alpha = 3 - sqrt(5): the stationary Gaussian width for lambda = -3, omega = 2.
constexpr const char* kSolitary = "gauss(2, 0.76393202250021030)";

std::string solitary(const std::string& name, const std::string& method, const std::string& methods, const char* extra) {
  return std::string("[experiment]\nname = ") + name +
         "\nreproduces = Example 1: solitary Gaussian, lambda = -3, omega = 2\n"
         "\n[equation]\nkind = log\nlambda = -3\nomega = 2\nepsilon = 1e-15\ninitial = " +
         kSolitary +
         "\n\n[grid]\na = -10\nb = 10\nh = 0.001953125\n"
         "\n[time]\nT = 2.5\nN = 10000\n"
         "\n[scheme]\nmethod = " +
         method +
         "\n\n[output]\nobservables = error, mass\nrecord_every = 100\nreference = gaussian\n"
         "\n[study]\nn_list = 1250, 2500, 5000, 10000, 20000\nmethods = " +
         methods + "\n" + extra;
}

std::string log_dynamics(const std::string& name, const std::string& reproduces, double lambda,
                         const std::string& initial, const std::string& domain, const std::string& h, const std::string& T,
                         const std::string& tau, const std::string& output) {
  return "[experiment]\nname = " + name + "\nreproduces = " + reproduces +
         "\n\n[equation]\nkind = log\nlambda = " + std::to_string(static_cast<int>(lambda)) +
         "\nomega = 2\nepsilon = 1e-15\ninitial = " + initial + "\n\n[grid]\n" + domain + "h = " + h +
         "\n\n[time]\nT = " + T + "\ntau = " + tau + "\n\n[scheme]\nmethod = strangI\n\n[output]\n" + output;
}

std::string power_dynamics(const std::string& name, const std::string& reproduces, int lambda, int sigma,
                           const std::string& initial, const std::string& T, const std::string& extra_scheme) {
  return "[experiment]\nname = " + name + "\nreproduces = " + reproduces +
         "\n\n[equation]\nkind = power\nlambda = " + std::to_string(lambda) + "\nomega = 2\nsigma = " +
         std::to_string(sigma) + "\ninitial = " + initial +
         "\n\n[grid]\na = -20\nb = 20\nh = 0.0009765625\n\n[time]\nT = " + T +
         "\ntau = 0.0002\n\n[scheme]\nmethod = strangI\n" + extra_scheme +
         "\n[output]\nobservables = mass, h1\nsnapshot_count = 50\n";
}

std::string portrait(const std::string& name, const std::string& reproduces, int lambda) {
  return "[experiment]\nname = " + name + "\nreproduces = " + reproduces +
         "\n\n[equation]\nkind = log\nlambda = " + std::to_string(lambda) +
         "\nomega = 2\n\n[portrait]\nmu_min = 0.15\nmu_max = 2.5\nmudot_min = -3\nmudot_max = 3\n"
         "trajectories = 14\nsamples = 400\n";
}

std::vector<Preset> build() {
  std::vector<Preset> p;
  const char* ten = "a = -10\nb = 10\n";
  const char* twenty = "a = -20\nb = 20\n";
  const std::string gauss_out = "observables = mass, h1, error\nreference = gaussian\nsnapshot_count = 40\n";
  const std::string plain_out = "observables = mass, h1\nsnapshot_count = 50\n";

  for (const char* m : {"lieI", "lieII", "strangI", "strangII"})
    p.push_back({std::string("example1-") + m, "converge",
                 std::string("Example 1 convergence of ") + m + " against the exact solitary wave",
                 solitary(std::string("example1-") + m, m, m, "")});
  p.push_back({"example1-convergence", "converge", "Example 1 convergence of all four methods",
               solitary("example1-convergence", "strangI", "lieI, lieII, strangI, strangII", "")});
  {
    std::string text = solitary("example1-error-growth", "strangI", "strangI, strangII", "error_samples = 250\n");
    text.replace(text.find("N = 10000"), 9, "N = 25000");
    p.push_back({"example1-error-growth", "error-growth", "Example 1 error against time for Strang I and II at N = 25000",
                 text});
  }
  p.push_back({"example1-epsilon", "converge", "Example 1 Strang I error for several regularization parameters",
               solitary("example1-epsilon", "strangI", "strangI", "epsilons = 1e-10, 1e-12, 1e-15\n")});

  p.push_back({"example2-casei", "simulate", "Example 2 (i): lambda = -3, u0 = 2 exp(-x^2), periodic width",
               log_dynamics("example2-casei", "Example 2 case (i)", -3, "gauss(2, 2)", ten, "0.0009765625", "2",
                            "0.0001", gauss_out + "record_every = 200\n")});
  p.push_back({"example2-caseii", "simulate", "Example 2 (ii): lambda = -3, u0 = 2 exp(-x^2/4), dispersive",
               log_dynamics("example2-caseii", "Example 2 case (ii)", -3, "gauss(2, 0.5)", ten, "0.0009765625", "4",
                            "0.0001", gauss_out + "record_every = 400\n")});
  p.push_back({"example2-caseiii", "simulate", "Example 2 (iii): lambda = -3, u0 = sech(x^2/2)",
               log_dynamics("example2-caseiii", "Example 2 case (iii)", -3, "sechx2(1)", ten, "0.0009765625", "3",
                            "0.0001", plain_out)});
  const std::string fine12 = "0.000244140625";
  p.push_back({"example3-casei", "simulate", "Example 3 (i): lambda = -2, u0 = 2 exp(-3x^2/2)",
               log_dynamics("example3-casei", "Example 3 case (i)", -2, "gauss(2, 3)", ten, fine12, "5", "0.0002",
                            plain_out)});
  p.push_back({"example3-caseii", "simulate", "Example 3 (ii): lambda = -2, u0 = 2 exp(-x^2/4)",
               log_dynamics("example3-caseii", "Example 3 case (ii)", -2, "gauss(2, 0.5)", ten, fine12, "5", "0.0002",
                            plain_out)});
  p.push_back({"example3-caseiii", "simulate", "Example 3 (iii): lambda = -2, u0 = sech(x^2/2)",
               log_dynamics("example3-caseiii", "Example 3 case (iii)", -2, "sechx2(1)", ten, fine12, "5", "0.0002",
                            plain_out)});
  p.push_back({"example4-casei", "simulate", "Example 4 (i): lambda = 1, u0 = sech(x^2/2) sin(x)",
               log_dynamics("example4-casei", "Example 4 case (i)", 1, "sechx2sin(1)", twenty, fine12, "5", "0.0002",
                            plain_out)});
  p.push_back({"example4-caseii", "simulate", "Example 4 (ii): lambda = 1, two separated Gaussians",
               log_dynamics("example4-caseii", "Example 4 case (ii)", 1, "gauss(2, 0.5, 3) + gauss(2, 2, -3)", twenty,
                            fine12, "5", "0.0002", plain_out)});

  for (int sigma : {1, 2, 3}) {
    const std::string s = std::to_string(sigma);
    p.push_back({"example5-casei-sigma" + s, "simulate", "Example 5 (i): power, lambda = 1, sigma = " + s + ", u0 = 2 exp(-x^2)",
                 power_dynamics("example5-casei-sigma" + s, "Example 5 case (i), sigma = " + s, 1, sigma, "gauss(2, 2)",
                                "5", "")});
    p.push_back({"example5-caseii-sigma" + s, "simulate",
                 "Example 5 (ii): power, lambda = 1, sigma = " + s + ", u0 = sech(x^2/2) sin(x)",
                 power_dynamics("example5-caseii-sigma" + s, "Example 5 case (ii), sigma = " + s, 1, sigma,
                                "sechx2sin(1)", "5", "")});
  }
  p.push_back({"example6-sigma1", "simulate", "Example 6: focusing power, sigma = 1, disperses",
               power_dynamics("example6-sigma1", "Example 6, sigma = 1", -1, 1, "gauss(2, 2)", "5", "blowup_factor = 20\n")});
  p.push_back({"example6-sigma2", "simulate", "Example 6: focusing power, sigma = 2, gradient blow-up",
               power_dynamics("example6-sigma2", "Example 6, sigma = 2", -1, 2, "gauss(2, 2)", "0.2", "blowup_factor = 20\n")});
  p.push_back({"example6-sigma3", "simulate", "Example 6: focusing power, sigma = 3, gradient blow-up near t = 0.0245",
               power_dynamics("example6-sigma3", "Example 6, sigma = 3", -1, 3, "gauss(2, 2)", "0.05", "blowup_factor = 20\n")});

  p.push_back({"example2-portrait", "phase-portrait", "Width ODE phase portrait, lambda = -3, omega = 2",
               portrait("example2-portrait", "Example 2 phase portrait", -3)});
  p.push_back({"example3-portrait", "phase-portrait", "Width ODE phase portrait, lambda = -2, omega = 2",
               portrait("example3-portrait", "Example 3 phase portrait", -2)});

  p.push_back({"theory-rate", "converge", "Lie I with frequency cut-off, power sigma = 1, against a fine reference",
               "[experiment]\nname = theory-rate\nreproduces = Lie-Trotter rate with frequency cut-off, power case\n"
               "\n[equation]\nkind = power\nlambda = 1\nomega = 2\nsigma = 1\ninitial = gauss(2, 2)\n"
               "\n[grid]\na = -16\nb = 16\npoints = 1024\n\n[time]\nT = 1\nN = 100\n"
               "\n[scheme]\nmethod = lieI\ncutoff = on\n"
               "\n[output]\nobservables = error\nreference = fine\nreference_factor = 8\n"
               "\n[study]\nn_list = 25, 50, 100, 200, 400\nmethods = lieI\n"});
  p.push_back({"linear-exact", "converge", "lambda = 0: every splitting is exact",
               "[experiment]\nname = linear-exact\nreproduces = exactness of the splitting without nonlinearity\n"
               "\n[equation]\nkind = log\nlambda = 0\nomega = 2\ninitial = gauss(1, 1)\n"
               "\n[grid]\na = -16\nb = 16\npoints = 512\n\n[time]\nT = 1\nN = 40\n"
               "\n[output]\nobservables = error\nreference = linear\n"
               "\n[study]\nn_list = 10, 20, 40\nmethods = lieI, lieII, strangI, strangII\n"});
  return p;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

Config preset_config(const std::string& name) {
  const auto& all = presets();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  if (it == all.end()) throw ConfigError("unknown preset '" + name + "' (see list-presets)");
  return Config::parse(it->text);
}

}  // namespace lenssplit::harness
