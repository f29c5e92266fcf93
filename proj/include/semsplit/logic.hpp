#pragma once

// Propositional formulas, theories, model enumeration and theory splitting.
//
// Grammar (loosest binding first):
//   iff   := imp { "<->" imp }        left-associative
//   imp   := or [ "->" imp ]          right-associative
//   or    := and { "|" and }          left-associative
//   and   := unary { "&" unary }      left-associative
//   unary := "~" unary | "(" iff ")" | "true" | "false" | identifier
// Identifiers match [A-Za-z_][A-Za-z0-9_']*.

#include "semsplit/core.hpp"
#include "semsplit/factorize.hpp"
#include "semsplit/partition.hpp"

#include <algorithm>
#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace semsplit
{

class Formula
{
public:
    enum class Kind
    {
        variable,
        truth,
        falsity,
        negation,
        conjunction,
        disjunction,
        implication,
        biconditional,
    };

private:
    Kind _kind = Kind::truth;
    std::string _name;
    std::vector< Formula > _operands;

    Formula( Kind kind, std::string name, std::vector< Formula > operands )
            : _kind{ kind }, _name{ std::move( name ) }, _operands{ std::move( operands ) }
    {
    }

public:
    Formula() = default;

    static Formula variable( std::string name ) { return { Kind::variable, std::move( name ), {} }; }
    static Formula truth() { return { Kind::truth, {}, {} }; }
    static Formula falsity() { return { Kind::falsity, {}, {} }; }
    static Formula negation( Formula f ) { return { Kind::negation, {}, { std::move( f ) } }; }
    static Formula conjunction( Formula a, Formula b ) { return { Kind::conjunction, {}, { std::move( a ), std::move( b ) } }; }
    static Formula disjunction( Formula a, Formula b ) { return { Kind::disjunction, {}, { std::move( a ), std::move( b ) } }; }
    static Formula implication( Formula a, Formula b ) { return { Kind::implication, {}, { std::move( a ), std::move( b ) } }; }
    static Formula biconditional( Formula a, Formula b ) { return { Kind::biconditional, {}, { std::move( a ), std::move( b ) } }; }

    [[nodiscard]] Kind kind() const noexcept { return _kind; }
    [[nodiscard]] const std::string& name() const noexcept { return _name; }
    [[nodiscard]] std::span< const Formula > operands() const noexcept { return _operands; }
    [[nodiscard]] const Formula& operand( std::size_t i ) const { return _operands.at( i ); }

    friend bool operator==( const Formula&, const Formula& ) = default;
};

// Variables occurring in f, in order of first occurrence.
inline std::vector< std::string > variables_of( const Formula& f )
{
    std::vector< std::string > out;
    auto visit = [ & ]( const auto& self, const Formula& g ) -> void {
        if ( g.kind() == Formula::Kind::variable )
        {
            if ( std::find( out.begin(), out.end(), g.name() ) == out.end() )
                out.push_back( g.name() );
            return;
        }
        for ( const auto& h : g.operands() )
            self( self, h );
    };
    visit( visit, f );
    return out;
}

namespace detail
{

struct Token
{
    enum class Type
    {
        identifier,
        truth,
        falsity,
        negation,
        conjunction,
        disjunction,
        implication,
        biconditional,
        open,
        close,
        end,
    };
    Type type;
    std::size_t offset;
    std::string text;
};

inline bool identifier_start( char c ) { return std::isalpha( static_cast< unsigned char >( c ) ) || c == '_'; }
inline bool identifier_char( char c ) { return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' || c == '\''; }

inline std::vector< Token > tokenize( std::string_view text )
{
    std::vector< Token > tokens;
    std::size_t i = 0;
    while ( i < text.size() )
    {
        char c = text[ i ];
        if ( std::isspace( static_cast< unsigned char >( c ) ) )
        {
            ++i;
            continue;
        }
        auto start = i;
        if ( identifier_start( c ) )
        {
            while ( i < text.size() && identifier_char( text[ i ] ) )
                ++i;
            std::string word{ text.substr( start, i - start ) };
            auto type = word == "true" ? Token::Type::truth : word == "false" ? Token::Type::falsity : Token::Type::identifier;
            tokens.push_back( { type, start, std::move( word ) } );
            continue;
        }
        switch ( c )
        {
        case '~': tokens.push_back( { Token::Type::negation, start, "~" } ); ++i; continue;
        case '&': tokens.push_back( { Token::Type::conjunction, start, "&" } ); ++i; continue;
        case '|': tokens.push_back( { Token::Type::disjunction, start, "|" } ); ++i; continue;
        case '(': tokens.push_back( { Token::Type::open, start, "(" } ); ++i; continue;
        case ')': tokens.push_back( { Token::Type::close, start, ")" } ); ++i; continue;
        default: break;
        }
        if ( text.substr( i, 2 ) == "->" )
        {
            tokens.push_back( { Token::Type::implication, start, "->" } );
            i += 2;
            continue;
        }
        if ( text.substr( i, 3 ) == "<->" )
        {
            tokens.push_back( { Token::Type::biconditional, start, "<->" } );
            i += 3;
            continue;
        }
        throw ParseError{ std::string{ "unexpected character '" } + c + "'", start };
    }
    tokens.push_back( { Token::Type::end, text.size(), "" } );
    return tokens;
}

class FormulaParser
{
    std::vector< Token > _tokens;
    std::size_t _next = 0;

public:
    explicit FormulaParser( std::string_view text ) : _tokens{ tokenize( text ) } {}

    Formula parse()
    {
        auto f = parse_iff();
        const auto& t = peek();
        if ( t.type == Token::Type::close )
            throw ParseError{ "unbalanced parenthesis: unmatched ')'", t.offset };
        if ( t.type != Token::Type::end )
            throw ParseError{ "expected an operator before '" + t.text + "'", t.offset };
        return f;
    }

private:
    const Token& peek() const { return _tokens[ _next ]; }
    const Token& take() { return _tokens[ _next++ ]; }

    bool accept( Token::Type type )
    {
        if ( peek().type != type )
            return false;
        ++_next;
        return true;
    }

    Formula parse_iff()
    {
        auto left = parse_imp();
        while ( accept( Token::Type::biconditional ) )
            left = Formula::biconditional( std::move( left ), parse_imp() );
        return left;
    }

    Formula parse_imp()
    {
        auto left = parse_or();
        if ( accept( Token::Type::implication ) )
            return Formula::implication( std::move( left ), parse_imp() );
        return left;
    }

    Formula parse_or()
    {
        auto left = parse_and();
        while ( accept( Token::Type::disjunction ) )
            left = Formula::disjunction( std::move( left ), parse_and() );
        return left;
    }

    Formula parse_and()
    {
        auto left = parse_unary();
        while ( accept( Token::Type::conjunction ) )
            left = Formula::conjunction( std::move( left ), parse_unary() );
        return left;
    }

    Formula parse_unary()
    {
        const auto& t = take();
        switch ( t.type )
        {
        case Token::Type::negation: return Formula::negation( parse_unary() );
        case Token::Type::identifier: return Formula::variable( t.text );
        case Token::Type::truth: return Formula::truth();
        case Token::Type::falsity: return Formula::falsity();
        case Token::Type::open:
        {
            auto inner = parse_iff();
            if ( !accept( Token::Type::close ) )
            {
                const auto& at = peek();
                if ( at.type == Token::Type::end )
                    throw ParseError{ "unbalanced parenthesis: '(' is never closed", t.offset };
                throw ParseError{ "expected ')' before '" + at.text + "'", at.offset };
            }
            return inner;
        }
        case Token::Type::close: throw ParseError{ "unbalanced parenthesis: unexpected ')'", t.offset };
        case Token::Type::end: throw ParseError{ "dangling operator: expected an operand at end of input", t.offset };
        default: throw ParseError{ "dangling operator: expected an operand before '" + t.text + "'", t.offset };
        }
    }
};

// Binding strength for printing; higher binds tighter.
inline int precedence( Formula::Kind kind )
{
    switch ( kind )
    {
    case Formula::Kind::biconditional: return 1;
    case Formula::Kind::implication: return 2;
    case Formula::Kind::disjunction: return 3;
    case Formula::Kind::conjunction: return 4;
    case Formula::Kind::negation: return 5;
    default: return 6;
    }
}

inline void print( std::string& out, const Formula& f, int required )
{
    using K = Formula::Kind;
    bool parens = precedence( f.kind() ) < required;
    if ( parens )
        out += '(';
    auto binary = [ & ]( std::string_view op, int left, int right ) {
        print( out, f.operand( 0 ), left );
        out += op;
        print( out, f.operand( 1 ), right );
    };
    switch ( f.kind() )
    {
    case K::variable: out += f.name(); break;
    case K::truth: out += "true"; break;
    case K::falsity: out += "false"; break;
    case K::negation:
        out += '~';
        print( out, f.operand( 0 ), 5 );
        break;
    case K::conjunction: binary( " & ", 4, 5 ); break;
    case K::disjunction: binary( " | ", 3, 4 ); break;
    case K::implication: binary( " -> ", 3, 2 ); break;
    case K::biconditional: binary( " <-> ", 1, 2 ); break;
    }
    if ( parens )
        out += ')';
}

// Flat evaluator over a bit vector of variable values (bit i = slot i).
class CompiledFormula
{
    struct Node
    {
        Formula::Kind kind;
        std::size_t slot = 0;
        std::size_t left = 0;
        std::size_t right = 0;
    };
    std::vector< Node > _nodes;
    std::size_t _root = 0;

public:
    template < typename SlotOf >
    CompiledFormula( const Formula& f, SlotOf&& slot_of )
    {
        _root = compile( f, slot_of );
    }

    [[nodiscard]] bool operator()( std::uint64_t bits ) const { return eval( _root, bits ); }

private:
    template < typename SlotOf >
    std::size_t compile( const Formula& f, SlotOf& slot_of )
    {
        Node node{ f.kind() };
        if ( f.kind() == Formula::Kind::variable )
            node.slot = slot_of( f.name() );
        if ( !f.operands().empty() )
            node.left = compile( f.operand( 0 ), slot_of );
        if ( f.operands().size() > 1 )
            node.right = compile( f.operand( 1 ), slot_of );
        _nodes.push_back( node );
        return _nodes.size() - 1;
    }

    bool eval( std::size_t i, std::uint64_t bits ) const
    {
        using K = Formula::Kind;
        const auto& n = _nodes[ i ];
        switch ( n.kind )
        {
        case K::variable: return ( bits >> n.slot ) & 1U;
        case K::truth: return true;
        case K::falsity: return false;
        case K::negation: return !eval( n.left, bits );
        case K::conjunction: return eval( n.left, bits ) && eval( n.right, bits );
        case K::disjunction: return eval( n.left, bits ) || eval( n.right, bits );
        case K::implication: return !eval( n.left, bits ) || eval( n.right, bits );
        case K::biconditional: return eval( n.left, bits ) == eval( n.right, bits );
        }
        return false;
    }
};

} // namespace detail

inline Formula parse_formula( std::string_view text ) { return detail::FormulaParser{ text }.parse(); }

// Minimal parenthesization; parse_formula(format_formula(f)) == f.
inline std::string format_formula( const Formula& f )
{
    std::string out;
    detail::print( out, f, 0 );
    return out;
}

inline constexpr std::size_t default_max_variables = 20;

// Models of the conjunction of `formulas` over `scope`. Every variable must
// name a scope coordinate with domain {0, 1}.
inline ModelSet models_over( std::span< const Formula > formulas, const SpacePtr& space, CoordSet scope,
                             std::size_t max_coordinates = default_max_variables )
{
    if ( scope.size() > max_coordinates )
        throw Error{ ErrorKind::resource, "enumeration limited to " + std::to_string( max_coordinates ) +
                                              " variables, got " + std::to_string( scope.size() ) };
    detail::ScopeCodec codec{ *space, scope };

    // slot i reads scope position positions[i]; true iff digit == ones[i]
    std::vector< std::size_t > positions;
    std::vector< ValueIndex > ones;
    std::unordered_map< std::string, std::size_t > slots;
    auto slot_of = [ & ]( const std::string& name ) -> std::size_t {
        if ( auto it = slots.find( name ); it != slots.end() )
            return it->second;
        auto k = space->find( name );
        if ( !k || !scope.contains( *k ) )
            throw Error{ ErrorKind::scope, "variable '" + name + "' is not a coordinate of the scope" };
        if ( !space->is_boolean( *k ) )
            throw Error{ ErrorKind::argument, "variable '" + name + "' does not have the domain {0, 1}" };
        if ( positions.size() >= 64 )
            throw Error{ ErrorKind::resource, "too many distinct variables" };
        positions.push_back( codec.position( *k ) );
        ones.push_back( space->value( *k, "1" ) );
        slots.emplace( name, positions.size() - 1 );
        return positions.size() - 1;
    };

    std::vector< detail::CompiledFormula > compiled;
    for ( const auto& f : formulas )
        compiled.emplace_back( f, slot_of );

    std::vector< Code > members;
    for ( Code c = 0; c < codec.size(); ++c )
    {
        std::uint64_t bits = 0;
        for ( std::size_t s = 0; s < positions.size(); ++s )
            if ( codec.digit( c, positions[ s ] ) == ones[ s ] )
                bits |= std::uint64_t{ 1 } << s;
        if ( std::all_of( compiled.begin(), compiled.end(), [ & ]( const auto& f ) { return f( bits ); } ) )
            members.push_back( c );
    }
    return ModelSet{ space, scope, std::move( members ) };
}

inline ModelSet models_over( const Formula& formula, const SpacePtr& space, CoordSet scope,
                             std::size_t max_coordinates = default_max_variables )
{
    return models_over( std::span< const Formula >{ &formula, 1 }, space, scope, max_coordinates );
}

// Declared Boolean variables plus formulas over them.
class Theory
{
    std::vector< std::string > _variables;
    std::vector< Formula > _formulas;
    SpacePtr _space;

public:
    Theory( std::vector< std::string > variables, std::vector< Formula > formulas )
            : _variables{ std::move( variables ) }, _formulas{ std::move( formulas ) },
              _space{ ProductSpace::boolean( _variables ) }
    {
        for ( const auto& f : _formulas )
            for ( const auto& v : variables_of( f ) )
                if ( !_space->find( v ) )
                    throw Error{ ErrorKind::scope, "variable '" + v + "' is not declared" };
    }

    // Variables in order of first mention across the formulas.
    static Theory inferred( std::vector< Formula > formulas )
    {
        std::vector< std::string > vars;
        for ( const auto& f : formulas )
            for ( auto& v : variables_of( f ) )
                if ( std::find( vars.begin(), vars.end(), v ) == vars.end() )
                    vars.push_back( std::move( v ) );
        return Theory{ std::move( vars ), std::move( formulas ) };
    }

    [[nodiscard]] std::span< const std::string > variables() const noexcept { return _variables; }
    [[nodiscard]] std::span< const Formula > formulas() const noexcept { return _formulas; }
    [[nodiscard]] const SpacePtr& space() const noexcept { return _space; }
};

inline ModelSet models_of( const Theory& t, std::size_t max_variables = default_max_variables )
{
    return models_over( t.formulas(), t.space(), t.space()->all(), max_variables );
}

// Full disjunctive normal form of a model set over Boolean coordinates:
// false when empty, true when it is the whole product.
inline Formula dnf_of( const ModelSet& x )
{
    if ( x.empty() )
        return Formula::falsity();
    if ( x.size() == x.product_size() )
        return Formula::truth();

    const auto& space = *x.space();
    std::optional< Formula > result;
    for ( const auto& m : x.members() )
    {
        std::optional< Formula > term;
        for ( auto k : x.scope() )
        {
            if ( !space.is_boolean( k ) )
                throw Error{ ErrorKind::argument, "'" + space[ k ].name + "' does not have the domain {0, 1}" };
            auto literal = Formula::variable( space[ k ].name );
            if ( m.symbol( k ) == "0" )
                literal = Formula::negation( std::move( literal ) );
            term = term ? Formula::conjunction( std::move( *term ), std::move( literal ) ) : std::move( literal );
        }
        result = result ? Formula::disjunction( std::move( *result ), std::move( *term ) ) : std::move( *term );
    }
    return *result;
}

struct SplitResult
{
    SpacePtr space;
    Partition partition;
    std::vector< ModelSet > components;      // one per block, in block order
    std::vector< Formula > component_formulas; // DNF of each component
};

inline SplitResult split_theory( const Theory& t, std::size_t max_variables = default_max_variables )
{
    auto models = models_of( t, max_variables );
    SplitResult result{ t.space(), finest_factorization( models ), {}, {} };
    result.components = block_projections( models, result.partition );
    for ( const auto& c : result.components )
        result.component_formulas.push_back( dnf_of( c ) );
    return result;
}

// Theory file: optional first line "vars p q r ...", then one formula per
// nonblank line. '#' starts a comment that runs to the end of the line.
inline Theory parse_theory( std::string_view text )
{
    std::optional< std::vector< std::string > > declared;
    std::vector< Formula > formulas;
    std::size_t line_no = 0;
    bool seen_content = false;

    while ( !text.empty() )
    {
        auto nl = text.find( '\n' );
        auto line = text.substr( 0, nl );
        text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );
        ++line_no;

        if ( auto hash = line.find( '#' ); hash != std::string_view::npos )
            line = line.substr( 0, hash );
        if ( std::all_of( line.begin(), line.end(), []( char c ) { return std::isspace( static_cast< unsigned char >( c ) ); } ) )
            continue;

        auto first = line.find_first_not_of( " \t\r" );
        auto body = line.substr( first );
        bool is_directive = body.substr( 0, 4 ) == "vars" && ( body.size() == 4 || std::isspace( static_cast< unsigned char >( body[ 4 ] ) ) );
        if ( is_directive )
        {
            if ( seen_content )
                throw ParseError{ "'vars' directive must be the first line", first, line_no };
            std::vector< std::string > names;
            std::size_t i = first + 4;
            while ( i < line.size() )
            {
                while ( i < line.size() && std::isspace( static_cast< unsigned char >( line[ i ] ) ) )
                    ++i;
                if ( i == line.size() )
                    break;
                auto start = i;
                if ( !detail::identifier_start( line[ i ] ) )
                    throw ParseError{ "invalid variable name", start, line_no };
                while ( i < line.size() && detail::identifier_char( line[ i ] ) )
                    ++i;
                if ( i < line.size() && !std::isspace( static_cast< unsigned char >( line[ i ] ) ) )
                    throw ParseError{ "invalid variable name", start, line_no };
                std::string name{ line.substr( start, i - start ) };
                if ( name == "true" || name == "false" )
                    throw ParseError{ "'" + name + "' is reserved", start, line_no };
                if ( std::find( names.begin(), names.end(), name ) != names.end() )
                    throw ParseError{ "variable '" + name + "' declared twice", start, line_no };
                names.push_back( std::move( name ) );
            }
            declared = std::move( names );
            seen_content = true;
            continue;
        }
        seen_content = true;

        try
        {
            formulas.push_back( parse_formula( line ) );
        }
        catch ( const ParseError& e )
        {
            throw e.at_line( line_no );
        }
        if ( declared )
            for ( const auto& v : variables_of( formulas.back() ) )
                if ( std::find( declared->begin(), declared->end(), v ) == declared->end() )
                    throw ParseError{ "variable '" + v + "' is not declared", line.find( v ), line_no };
    }

    if ( declared )
        return Theory{ std::move( *declared ), std::move( formulas ) };
    return Theory::inferred( std::move( formulas ) );
}

} // namespace semsplit
