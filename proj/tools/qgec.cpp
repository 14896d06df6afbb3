// qgec: Grover-based equivalence checking of combinational circuits.
//
//   qgec check A.ckt B.ckt [--phi 0.3] [--shots-factor 8] [--seed S] [--backend semantic|gate]
//   qgec bench [--bits 6..9] [--phi 0.1,0.3,0.5,0.7,0.9] [--runs 10] [--seed S] [--out results.csv]
//   qgec theory --n N --c C --g-max G [--out curve.csv]
//   qgec gen --bits n --c c --seed S --out-a A.ckt --out-b B.ckt
//
// check exits with 0 (equivalent), 1 (non-equivalent) or 2 (error).

#include <qgec/qgec.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace
{

constexpr int exit_error = 2;

std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw qgec::error( "cannot open '" + path + "'" );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file( std::string const& path, std::string const& content )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw qgec::error( "cannot write '" + path + "'" );
  out << content;
}

qgec::circuit load_circuit( std::string const& path )
{
  try
  {
    return qgec::parse_circuit( read_file( path ), std::filesystem::path( path ).stem().string() );
  }
  catch ( qgec::netlist_error const& e )
  {
    throw qgec::error( path + ":" + e.what() );
  }
}

/// "6..9", "7" or "6,8".
std::vector<unsigned> parse_bits( std::string const& text )
{
  std::vector<unsigned> bits;
  if ( auto dots = text.find( ".." ); dots != std::string::npos )
  {
    auto const lo = std::stoul( text.substr( 0, dots ) );
    auto const hi = std::stoul( text.substr( dots + 2 ) );
    if ( lo > hi )
      throw qgec::config_error( "empty bit range '" + text + "'" );
    for ( auto b = lo; b <= hi; ++b )
      bits.push_back( static_cast<unsigned>( b ) );
    return bits;
  }
  std::stringstream ss( text );
  std::string item;
  while ( std::getline( ss, item, ',' ) )
    bits.push_back( static_cast<unsigned>( std::stoul( item ) ) );
  return bits;
}

template<class T, class Convert>
std::vector<T> parse_list( std::string const& text, Convert convert )
{
  std::vector<T> out;
  std::stringstream ss( text );
  std::string item;
  while ( std::getline( ss, item, ',' ) )
  {
    if ( !item.empty() )
      out.push_back( convert( item ) );
  }
  return out;
}

qgec::oracle_backend backend_from_string( std::string const& name )
{
  return name == "gate" ? qgec::oracle_backend::gate : qgec::oracle_backend::semantic;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Grover-based equivalence checking of combinational circuits" };
  app.require_subcommand( 1 );

  // check
  auto* check = app.add_subcommand( "check", "Check two netlists for equivalence" );
  std::string path_a, path_b, attempts_out, dump_oracle;
  qgec::checker_config cfg;
  bool no_verify = false;
  check->add_option( "A", path_a, "First circuit (.ckt)" )->required();
  check->add_option( "B", path_b, "Second circuit (.ckt)" )->required();
  check->add_option( "--phi", cfg.phi, "Split threshold in (0,1)" )->capture_default_str();
  check->add_option( "--shots-factor", cfg.shots_factor, "Shots per attempt as a multiple of N" )->capture_default_str();
  check->add_option( "--seed", cfg.seed, "Sampling seed" )->capture_default_str();
  std::string check_backend = "semantic";
  check->add_option( "--backend", check_backend, "Oracle backend" )->check( CLI::IsMember( { "semantic", "gate" } ) )->capture_default_str();
  check->add_flag( "--no-verify", no_verify, "Report candidates without classical re-verification" );
  check->add_option( "--attempts-csv", attempts_out, "Write per-attempt CSV" );
  check->add_option( "--dump-oracle", dump_oracle, "Write the oracle program listing" );

  // bench
  auto* bench = app.add_subcommand( "bench", "Run the experiment suite and print the result table" );
  std::string bits_text = "6..9", phis_text = "0.1,0.3,0.5,0.7,0.9", c_text, out_csv;
  qgec::suite_config suite;
  bool bench_no_verify = false;
  bench->add_option( "--bits", bits_text, "Input widths, e.g. 6..9 or 6,8" )->capture_default_str();
  bench->add_option( "--phi", phis_text, "Comma-separated phi values" )->capture_default_str();
  bench->add_option( "--c", c_text, "Comma-separated counterexample counts for every width (default: built-in suite)" );
  bench->add_option( "--runs", suite.runs, "Runs per instance and phi" )->capture_default_str();
  bench->add_option( "--seed", suite.seed, "Master seed" )->capture_default_str();
  bench->add_option( "--shots-factor", suite.shots_factor, "Shots per attempt as a multiple of N" )->capture_default_str();
  std::string bench_backend = "semantic";
  bench->add_option( "--backend", bench_backend, "Oracle backend" )->check( CLI::IsMember( { "semantic", "gate" } ) )->capture_default_str();
  bench->add_option( "--jobs", suite.jobs, "Worker threads (0 = all cores)" )->capture_default_str();
  bench->add_flag( "--timing", suite.timing, "Fill the wall_ms column (makes the CSV non-reproducible)" );
  bench->add_flag( "--no-verify", bench_no_verify, "Disable classical re-verification of candidates" );
  bench->add_option( "--out", out_csv, "Write the per-run CSV here" );

  // theory
  auto* theory = app.add_subcommand( "theory", "Closed-form success probability per iteration count" );
  std::uint64_t th_n = 0, th_c = 0, th_g = 0;
  std::string th_out;
  theory->add_option( "--n", th_n, "Total number of states N" )->required();
  theory->add_option( "--c", th_c, "Number of marked states" )->required();
  theory->add_option( "--g-max", th_g, "Largest iteration count" )->required();
  theory->add_option( "--out", th_out, "Write CSV here instead of stdout" );

  // gen
  auto* gen = app.add_subcommand( "gen", "Generate a circuit pair with a known number of counterexamples" );
  qgec::instance_spec spec;
  std::string out_a, out_b;
  gen->add_option( "--bits", spec.n_bits, "Number of inputs" )->required();
  gen->add_option( "--c", spec.c, "Number of counterexamples" )->required();
  gen->add_option( "--seed", spec.seed, "Generator seed" )->capture_default_str();
  gen->add_option( "--gates", spec.base_gates, "Gates in the random base circuit (0 = 2 * bits)" );
  gen->add_option( "--out-a", out_a, "Output path of circuit A" )->required();
  gen->add_option( "--out-b", out_b, "Output path of circuit B" )->required();

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? 0 : exit_error;
  }

  try
  {
    if ( *check )
    {
      cfg.verify = !no_verify;
      cfg.backend = backend_from_string( check_backend );
      auto const a = load_circuit( path_a );
      auto const b = load_circuit( path_b );
      auto const m = qgec::build_miter( a, b );
      if ( !dump_oracle.empty() )
        write_file( dump_oracle, qgec::make_oracle( m, cfg.backend, cfg.max_qubits ).dump() );
      auto const outcome = qgec::check_miter( m, cfg );
      std::cout << qgec::format_report( outcome, cfg );
      if ( !attempts_out.empty() )
        write_file( attempts_out, qgec::attempts_csv( outcome ) );
      return outcome.result == qgec::verdict::equivalent ? 0 : 1;
    }

    if ( *bench )
    {
      suite.bits = parse_bits( bits_text );
      suite.phis = parse_list<double>( phis_text, []( std::string const& s ) { return std::stod( s ); } );
      suite.verify = !bench_no_verify;
      suite.backend = backend_from_string( bench_backend );
      if ( !c_text.empty() )
      {
        auto const cs = parse_list<std::uint64_t>( c_text, []( std::string const& s ) { return std::stoull( s ); } );
        suite.c_values.clear();
        for ( auto b : suite.bits )
          suite.c_values[b] = cs;
      }
      for ( auto b : suite.bits )
      {
        if ( !suite.c_values.count( b ) )
          throw qgec::config_error( "no counterexample counts for " + std::to_string( b ) + " bits; pass --c" );
      }
      auto const records = qgec::run_suite( suite );
      std::cout << qgec::format_table( records );
      std::size_t errors = 0;
      for ( auto const& r : records )
      {
        if ( !r.error.empty() )
        {
          ++errors;
          std::cerr << "error: bits=" << r.bits << " c=" << r.c_true << " phi=" << r.phi << " run=" << r.run << ": " << r.error << "\n";
        }
      }
      if ( !out_csv.empty() )
        write_file( out_csv, qgec::records_csv( records ) );
      return errors ? exit_error : 0;
    }

    if ( *theory )
    {
      auto const csv = qgec::theory_curve_csv( th_n, th_c, th_g );
      if ( th_out.empty() )
        std::cout << csv;
      else
        write_file( th_out, csv );
      return 0;
    }

    if ( *gen )
    {
      auto const [a, b] = qgec::generate_instance( spec );
      write_file( out_a, qgec::serialize_circuit( a ) + "\n" );
      write_file( out_b, qgec::serialize_circuit( b ) + "\n" );
      return 0;
    }
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}
