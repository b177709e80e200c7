"""Geometry of the synthetic datasets.

Only the sample counts and anomaly rate come from the benchmark description;
every coordinate, radius and noise level below is a choice of this package.
"""

N_SAMPLES = 300
ANOMALY_RATE = 0.10
N_ANOMALY = round(N_SAMPLES * ANOMALY_RATE)
N_NORMAL = N_SAMPLES - N_ANOMALY

# S1, global anomalies: Gaussian core, anomalies on a uniform annulus.
S1_NORMAL_SD = 1.0
S1_ANNULUS_INNER = 4.0
S1_ANNULUS_OUTER = 6.0

# S2, local anomalies: two interleaved half-circle arcs.
S2_RADIUS = 1.0
S2_VERTICAL_OFFSET = 0.5
S2_JITTER_SD = 0.05
# anomalies are uniform in the arcs' bounding box but at least this far from either arc
S2_ARC_CLEARANCE = 0.2

# S3, dependency anomalies: y = x for normals, y = -x for anomalies.
S3_X_RANGE = (-2.0, 2.0)
S3_NOISE_SD = 0.1

# Two-density fixture: blob centers are this many sparse-blob sds apart.
TWO_DENSITY_SEPARATION = 20.0
# planted boundary points sit this many sds from their blob's center
BOUNDARY_RADIUS_SD = 2.5
