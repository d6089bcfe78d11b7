DEFAULT_STANDARD_WIDTH = 752
DEFAULT_STANDARD_HEIGHT = 500

DEFAULT_CLAHE_TILES_X = 8
DEFAULT_CLAHE_TILES_Y = 8
DEFAULT_CLAHE_CLIP_LIMIT = 3.0
HISTOGRAM_BINS = 256

DEFAULT_STRETCH_LOW_FRAC = 0.01
DEFAULT_STRETCH_HIGH_FRAC = 0.01

DEFAULT_SE_RADIUS = 12
DEFAULT_CLEANUP_RADIUS = 1
DEFAULT_CLEANUP_ORDER = 'close_open'
DEFAULT_DESPECKLE = False

DEFAULT_AREA_MIN = 5
DEFAULT_AREA_MAX = 5000
DEFAULT_COMPACT_SEI = (0.55, 9.0)
DEFAULT_COMPACT_SHI = (0.7, 4.0)
DEFAULT_INTENSITY_SEI_MIN = 90.0
DEFAULT_INTENSITY_SHI_MAX = 200.0
DEFAULT_HUE_SEI = (0.125, 0.165)
DEFAULT_HUE_SHI = (0.06, 0.125)

DEFAULT_SCORING = 'blob_pixels'

GRAY_WEIGHTS = (0.299, 0.587, 0.114)

SOURCE_SEI = 'SEI'
SOURCE_SHI = 'SHI'

STAGE_PREPROCESSING = 'preprocessing'
STAGE_AREA = 'area'
STAGE_COMPACTNESS = 'compactness'
STAGE_INTENSITY = 'intensity'
STAGE_HUE = 'hue'
STAGE_POSTPROCESSING = 'postprocessing'
STAGES = (STAGE_PREPROCESSING, STAGE_AREA, STAGE_COMPACTNESS, STAGE_INTENSITY, STAGE_HUE, STAGE_POSTPROCESSING)
FILTER_STAGES = (STAGE_AREA, STAGE_COMPACTNESS, STAGE_INTENSITY, STAGE_HUE)
OUTCOME_CANDIDATE = 'candidate'

ELLIPSE_AXIS_SCALE = 2.0
ELLIPSE_MIN_AXIS = 0.5
ELLIPSE_PAD = 2.0
ELLIPSE_ARC_STEP = 0.5
SEI_COLOR = (255, 255, 0)
SHI_COLOR = (255, 0, 0)

MASK_FOREGROUND = 255
MASK_READ_THRESHOLD = 127
IMAGE_SUFFIXES = ('.png', '.ppm', '.pgm')

DUMP_GRAY = '01_gray'
DUMP_CLAHE = '02_clahe'
DUMP_BRIGHT = '03_bright'
DUMP_SEI = '04_sei'
DUMP_DARK = '05_dark'
DUMP_SHI = '06_shi'
DUMP_CASCADE_STAGES = {
    STAGE_AREA: '07_area',
    STAGE_COMPACTNESS: '08_compactness',
    STAGE_INTENSITY: '09_intensity',
    STAGE_HUE: '10_hue',
}

ANNOTATED_FILENAME = 'annotated.png'
CANDIDATES_FILENAME = 'candidates.csv'
BLOBS_FILENAME = 'blobs.csv'
ANNOTATIONS_FILENAME = 'annotations.csv'
STAGES_FILENAME = 'stages.csv'
IMAGE_PREFIX = 'img_'
GROUND_TRUTH_PREFIX = 'gt_'

BLOB_CSV_HEADER = ('id', 'source', 'area', 'perimeter', 'compactness', 'intensity_mid', 'mean_hue', 'cx', 'cy',
                   'orientation')
ANNOTATION_CSV_HEADER = ('cx', 'cy', 'a', 'b', 'angle', 'source')
REPORT_CSV_HEADER = ('image', 'stage', 'blob_count', 'recall_pct')
STAGES_CSV_HEADER = ('image', 'stage', 'blob_count', 'recall')
MEAN_ROW_NAME = 'mean'

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3

DEFAULT_SYNTH_SEED = 42
DEFAULT_SYNTH_COUNT = 10
