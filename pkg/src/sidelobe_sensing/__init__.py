"""Side-lobe interference sensing: detect and track a moving blocker around
a mmWave uplink from the interference fluctuations its motion leaves in the
serving station's antenna side lobes."""

from .angles import bearing_deg, circular_diff_deg, wrap_deg
from .config import (
    AntennaConfig,
    BandConfig,
    BlockerConfig,
    ConfigError,
    EvalConfig,
    ExperimentConfig,
    SensingConfig,
    config_from_dict,
    load_config,
    save_config,
)
from .deployment import (
    Deployment,
    DeploymentError,
    LinkGeometry,
    NetworkConfig,
    associate,
    build_deployment,
    link_geometry,
    sample_ppp,
)
from .evaluation import (
    ErrorSample,
    EvalResult,
    circular_error_deg,
    run_grid_eval,
    sweep,
    weight,
    wmae,
)
from .mobility import (
    BlockerState,
    GridCell,
    MotionBounds,
    angle_to_link,
    grid_trajectory,
    make_grid,
    random_trajectory,
    step_random,
)
from .radio import (
    AntennaPattern,
    ChannelParams,
    LinkState,
    antenna_gain,
    blockage_db,
    fading_sample,
    pathloss_db,
    psl,
    received_power_dbm,
)
from .sensing import (
    EpochDraw,
    Scene,
    SectorPartition,
    SensingMatrix,
    SinrHistory,
    build_sensing_matrix,
    interferer_presence_prob,
    make_scene,
    sector_interference_mw,
    sector_of,
    sector_sinr,
    simulate_history,
)
from .signature import (
    AngularEstimate,
    BandSplit,
    DetectorConfig,
    SvdFactors,
    analyze_window,
    estimate_angles,
    split_bands,
    suggest_bands,
    svd,
)

__version__ = "0.1.0"
