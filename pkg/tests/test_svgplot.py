import xml.etree.ElementTree as ET

from leosrp.svgplot import Figure, Series, render


def demo_figure():
    fig = Figure(title="demo", x_label="x", y_label="y")
    fig.series.append(Series(xs=[0.0, 1.0, 2.0], ys=[0.0, 1.0, 0.5],
                             label="line"))
    fig.series.append(Series(xs=[0.5, 1.5], ys=[0.2, 0.8], mode="points",
                             color="#d62728", label="dots"))
    return fig


def test_render_is_valid_xml():
    svg = render(demo_figure())
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")


def test_render_has_expected_shapes():
    svg = render(demo_figure())
    assert svg.count("<polyline") >= 1
    assert svg.count("<circle") == 2
    assert "demo" in svg


def test_render_deterministic():
    assert render(demo_figure()) == render(demo_figure())


def test_fixed_ranges_and_grid():
    fig = Figure(x_range=(-180.0, 180.0), y_range=(-90.0, 90.0),
                 grid_step=(90.0, 45.0))
    fig.series.append(Series(xs=[-170.0, 170.0], ys=[-80.0, 80.0]))
    svg = render(fig)
    ET.fromstring(svg)
    assert "<line" in svg  # grid lines present


def test_single_point_series():
    fig = Figure()
    fig.series.append(Series(xs=[1.0], ys=[2.0], mode="points"))
    ET.fromstring(render(fig))
