#pragma once

#include "semsplit/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace semsplit::cli
{

// Parses argv into a config and runs it. Usage errors exit 1; --help exits 0.
inline int main_with_args( int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Factorizations of finite model sets: checking, finest splitting, revision and recoding" };
    app.name( "semsplit" );
    app.require_subcommand( 1, 1 );

    CliConfig config;
    bool json_output = false;
    app.add_flag( "--json", json_output, "Emit one structured JSON record instead of plain text" );

    auto add_bounds = [ & ]( CLI::App* sub ) {
        sub->add_option( "--max-vars", config.max_variables, "Variable bound for model enumeration" )
                ->capture_default_str();
    };
    auto add_oracle = [ & ]( CLI::App* sub ) {
        sub->add_flag( "--oracle", config.oracle, "Cross-check against brute-force enumeration of all partitions" );
        sub->add_option( "--oracle-bound", config.oracle_bound, "Coordinate bound for the oracle" )->capture_default_str();
    };

    auto* models = app.add_subcommand( "models", "Enumerate the models of a theory" );
    models->add_option( "-t,--theory", config.theory_path, "Theory file ('-' for stdin)" )->required();
    add_bounds( models );

    auto* check = app.add_subcommand( "check", "Check whether a partition factorizes a model set" );
    check->add_option( "-m,--models", config.models_path, "Model-set file ('-' for stdin)" )->required();
    check->add_option( "-p,--partition", config.partition_text, "Partition, e.g. \"p,q|r\"" )->required();

    auto* finest = app.add_subcommand( "finest", "Compute the finest factorization" );
    auto* fm = finest->add_option( "-m,--models", config.models_path, "Model-set file ('-' for stdin)" );
    auto* ft = finest->add_option( "-t,--theory", config.theory_path, "Theory file ('-' for stdin)" );
    fm->excludes( ft );
    add_bounds( finest );
    add_oracle( finest );

    auto* split = app.add_subcommand( "split", "Split a theory into variable-disjoint components" );
    split->add_option( "-t,--theory", config.theory_path, "Theory file ('-' for stdin)" )->required();
    add_bounds( split );
    add_oracle( split );

    auto* revise = app.add_subcommand( "revise", "Hamming-distance revision of a model set" );
    revise->add_option( "-m,--models", config.models_path, "Prior model-set file ('-' for stdin)" )->required();
    auto* rf = revise->add_option( "-f,--formula", config.formula_text, "Revision input as a formula" );
    auto* rp = revise->add_option( "--psi-models", config.psi_models_path, "Revision input as a model-set file" );
    rf->excludes( rp );
    add_bounds( revise );

    auto* search = app.add_subcommand( "recode-search", "Search for a recoding that makes a model set factorizable" );
    search->add_option( "-m,--models", config.models_path, "Model-set file ('-' for stdin)" )->required();
    search->add_option( "--max-product", config.max_product, "Bound on the size of the full product" )->capture_default_str();

    auto* apply = app.add_subcommand( "recode-apply", "Apply a recoding given by variable definitions" );
    apply->add_option( "-m,--models", config.models_path, "Model-set file ('-' for stdin)" )->required();
    apply->add_option( "-r,--recoding", config.recoding_path, "Definition file with lines 'name := formula'" )->required();

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::Success& )
    {
        out << app.help();
        return 0;
    }
    catch ( const CLI::ParseError& e )
    {
        err << "semsplit: " << e.what() << "\n";
        return 1;
    }

    const std::vector< std::pair< CLI::App*, Command > > table{
        { models, Command::models },   { check, Command::check },          { finest, Command::finest },
        { split, Command::split },     { revise, Command::revise },        { search, Command::recode_search },
        { apply, Command::recode_apply },
    };
    for ( const auto& [ sub, command ] : table )
        if ( sub->parsed() )
            config.command = command;
    config.output = json_output ? OutputMode::structured : OutputMode::plain;
    return run( config, in, out, err );
}

} // namespace semsplit::cli
