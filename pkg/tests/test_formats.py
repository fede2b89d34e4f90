import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gen, random_3s3t
from sumnet import catalog, constructor, formats, netcode
from sumnet.errors import ParseError, ValidationError
from sumnet.gf import PrimeField
from sumnet.oracle import brute_force_solvable

F2, F3 = PrimeField(2), PrimeField(3)

SMALL = """\
# a comment line
node s1 source
node s2 source
node s3 source   # trailing comment
node t1 terminal
node t2 terminal
node t3 terminal
node u
edge a s1 u
edge b s2 u
edge c s3 u
edge x u t1
edge y u t2
edge z u t3
"""


def test_parse_small():
    net = formats.parse_network(SMALL, require_3s3t=True)
    assert [net.node_names[v] for v in net.sources] == ["s1", "s2", "s3"]
    assert net.edge_names[0] == "a" and len(net.edges) == 6
    assert formats.parse_network(formats.render_network(net)) == net


@pytest.mark.parametrize("name", sorted(catalog.NAMED))
def test_catalog_round_trip(name):
    net = catalog.NAMED[name]()
    back = formats.parse_network(formats.render_network(net))
    assert back == net.canonical()
    assert formats.render_network(back) == formats.render_network(net)


@given(random_3s3t())
def test_generated_round_trip(net):
    back = formats.parse_network(formats.render_network(net))
    assert back == net
    assert back.node_names == net.node_names and back.edge_names == net.edge_names


@pytest.mark.parametrize("text,line,col", [
    ("node s1 source\nvertex u\n", 2, 1),
    ("node s1 sink\n", 1, 9),
    ("node s1 source\nedge a s1\n", 2, 1),
    ("node\n", 1, 1),
])
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        formats.parse_network(text)
    assert (exc.value.line, exc.value.column) == (line, col)
    assert f"line {line}" in str(exc.value)


@pytest.mark.parametrize("text", [
    "node u\nnode u\n",
    "node u\nnode w\nedge a u w\nedge a w u\n",
    "node u\nnode w\nedge source u w\n",
    "node u\nedge a u w\n",
    "node u\nedge a u u\n",
    "node u\nnode w\nedge a u w\nedge b w u\n",
])
def test_validation_errors(text):
    with pytest.raises(ValidationError):
        formats.parse_network(text)


def test_require_3s3t():
    text = SMALL.replace("node s3 source", "node s3")
    formats.parse_network(text)
    with pytest.raises(ValidationError):
        formats.parse_network(text, require_3s3t=True)


def test_code_file_example():
    net = formats.parse_network(SMALL)
    text = "field 3\ncoef a source 1\ncoef b source 1\ncoef c source 1\n" \
           "coef x a 1\ncoef x b 1\ncoef x c 1\n"
    code = formats.parse_code(text, net)
    assert code.field.p == 3 and code.edge_maps[3] == (1, 1, 1)
    # unlisted entries are zero
    assert code.edge_maps[4] == (0, 0, 0) and code.terminal_decoders[0] == (0,)


@pytest.mark.parametrize("text", [
    "coef a source 1\n",            # field line missing
    "field 4\n",                    # not prime
    "field 3\ncoef q source 1\n",    # unknown edge
    "field 3\ncoef x s1 1\n",        # not an input of x
    "field 3\ncoef a source 7\n",    # out of range
    "field 3\nblock 2 2\ncoef a source 1\n",  # wrong matrix shape
    "field 3\ndecode u x 1\n",       # not a terminal
    "field 3\nweight a 1\n",
])
def test_code_file_errors(text):
    net = formats.parse_network(SMALL)
    with pytest.raises((ParseError, ValidationError)):
        formats.parse_code(text, net)


@given(st.integers(0, 5000), st.sampled_from([F2, F3]))
@settings(max_examples=30)
def test_scalar_code_round_trip(seed, field):
    net = gen(seed)
    code = brute_force_solvable(net, field)
    if code is None:
        return
    back = formats.parse_code(formats.render_code(net, code), net)
    assert dict(back.edge_maps) == dict(code.edge_maps)
    assert back.terminal_decoders == code.terminal_decoders
    assert netcode.verify_exhaustive(net, back)


def test_fractional_code_round_trip(thm1_net):
    code = constructor.search_fractional(thm1_net, F2, 2, 3).code
    text = formats.render_code(thm1_net, code)
    assert text.startswith("field 2\nblock 2 3\n")
    back = formats.parse_code(text, thm1_net)
    assert (back.k, back.n) == (2, 3)
    assert dict(back.edge_maps) == dict(code.edge_maps) and back.terminal_decoders == code.terminal_decoders
    assert netcode.verify_fractional(thm1_net, back)


def test_matrix_format():
    assert formats.format_matrix(((1, 0), (0, 1))) == "1,0;0,1"
