"""inklight: legibility enhancement for degraded manuscript photographs.

Color-processing enhancement catalog (gamut expansion, lightness stretching,
negative polarity, vividness, LSV, hue shift, CIELAB retinex, cross-spectral
colorization), plus the rating/ranking mathematics used to evaluate such
methods (Centroids, ROD, Majority Judgment, Kemenization, Kendall's W,
spatial flatness), a batch CLI, and a local rating service.
"""

__version__ = "0.1.0"
