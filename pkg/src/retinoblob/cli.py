"""
Command-line front end: ``retinoblob detect | eval | synth | config``.

Exit codes: 0 success, 1 usage, 2 data error, 3 I/O failure.
"""
import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

from . import __version__
from .blob_analysis import write_blob_table
from .cascade_tree import write_stage_table
from .config_file import dump_config, load_config
from .constants import (ANNOTATED_FILENAME, ANNOTATIONS_FILENAME, BLOBS_FILENAME, CANDIDATES_FILENAME,
                        DEFAULT_SYNTH_COUNT, DEFAULT_SYNTH_SEED, DUMP_BRIGHT, DUMP_CASCADE_STAGES, DUMP_CLAHE,
                        DUMP_DARK, DUMP_GRAY, DUMP_SEI, DUMP_SHI, EXIT_OK, EXIT_USAGE, GROUND_TRUTH_PREFIX,
                        IMAGE_PREFIX, STAGE_POSTPROCESSING, STAGES_FILENAME)
from .detector import Detector
from .evaluation import write_report
from .exceptions import (DimensionMismatchError, EmptyDatasetError, ImageReadError, MissingGroundTruthError,
                         RetinoblobError)
from .image_core import load_color, load_mask, save_color, save_gray, save_mask
from .models import DetectionResult, EvaluationReport, GroundTruth, ImageEvaluation, PipelineConfig, SynthSpec
from .postprocess import candidate_mask, write_annotations
from .synthesis import synthesize_fundus
from .utils import ensure_dir, ground_truth_path, list_images

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the usage code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{self.prog}: error: {message}\n')


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f'expected a non-negative integer, got {text}')
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {text}')
    return value


def _non_negative_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f'expected a non-negative number, got {text}')
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    common.add_argument('--config', type=Path, help='flat key = value config file')

    parser = _Parser(prog='retinoblob', description='Exudate and haemorrhage detection in fundus images.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    detect = commands.add_parser('detect', parents=[common], help='detect lesions in one image')
    detect.add_argument('image', type=Path)
    detect.add_argument('--out', type=Path, required=True, help='output directory')
    detect.add_argument('--dump-stages', action='store_true', help='also write every intermediate raster')
    detect.add_argument('--gt', type=Path, help='ground-truth mask; fills the recall column of stages.csv')

    evaluate = commands.add_parser('eval', parents=[common], help='score a batch against ground-truth masks')
    evaluate.add_argument('img_dir', type=Path)
    evaluate.add_argument('gt_dir', type=Path)
    evaluate.add_argument('--out', type=Path, required=True, help='report CSV')
    evaluate.add_argument('--scoring', choices=['blob_pixels', 'ellipse_interior'])
    evaluate.add_argument('--jobs', type=_positive_int, default=1, help='images processed in parallel')
    evaluate.add_argument('--annotated-dir', type=Path, help='write <stem>_annotated.png per image here')

    synth = commands.add_parser('synth', parents=[common], help='generate a synthetic batch with ground truth')
    synth.add_argument('--seed', type=int, default=DEFAULT_SYNTH_SEED)
    synth.add_argument('--count', type=_positive_int, default=DEFAULT_SYNTH_COUNT)
    synth.add_argument('--out', type=Path, required=True, help='output directory')
    synth.add_argument('--exudates', type=_non_negative_int)
    synth.add_argument('--haemorrhages', type=_non_negative_int)
    synth.add_argument('--noise-sigma', type=_non_negative_float)

    commands.add_parser('config', parents=[common], help='print the effective configuration')
    return parser


def _dump_stages(result: DetectionResult, out: Path) -> None:
    stages = result.stages
    save_gray(stages.gray, out / f'{DUMP_GRAY}.png')
    save_gray(stages.clahe, out / f'{DUMP_CLAHE}.png')
    save_gray(stages.bright, out / f'{DUMP_BRIGHT}.png')
    save_mask(stages.sei, out / f'{DUMP_SEI}.png')
    save_gray(stages.dark, out / f'{DUMP_DARK}.png')
    save_mask(stages.shi, out / f'{DUMP_SHI}.png')
    by_id = {blob.id: blob for blob in result.blobs}
    dims = stages.clahe.dims
    for stage, name in DUMP_CASCADE_STAGES.items():
        survivors = [by_id[blob_id] for blob_id in result.trace.survivors(stage)]
        save_mask(candidate_mask(survivors, dims), out / f'{name}.png')


def cmd_detect(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    image = load_color(args.image)
    out = ensure_dir(args.out)
    detector = Detector(cfg)
    result = detector.detect(image, source=str(args.image))

    save_color(result.annotated, out / ANNOTATED_FILENAME)
    write_blob_table(result.candidates, out / CANDIDATES_FILENAME)
    write_blob_table(result.blobs, out / BLOBS_FILENAME, outcomes=result.trace.outcomes)
    write_annotations(result.annotations, out / ANNOTATIONS_FILENAME)
    name = Path(args.image).name
    recalls = None
    if args.gt is not None:
        row = detector.evaluate(image, GroundTruth(mask=load_mask(args.gt)), name, result=result)
        recalls = [record.recall for record in row.stages]
    write_stage_table(name, result.trace, out / STAGES_FILENAME, recalls)
    if args.dump_stages:
        _dump_stages(result, out)
    print(f'{args.image}: {len(result.candidates)} candidates, {result.trace.count(STAGE_POSTPROCESSING)} regions')
    return EXIT_OK


EvalTask = Tuple[str, str, PipelineConfig, Optional[str]]


def evaluate_one(task: EvalTask) -> ImageEvaluation:
    """
    Detects and scores one image/mask pair. Runs in worker processes, so it takes plain picklable arguments.
    """
    image_path, gt_path, cfg, annotated_dir = task
    detector = Detector(cfg)
    image = load_color(image_path)
    mask = load_mask(gt_path)
    if mask.dims != detector.dims:
        raise DimensionMismatchError(f'{gt_path} is {mask.width}x{mask.height} but {image_path} is evaluated at '
                                     f'{detector.dims[0]}x{detector.dims[1]}')
    name = Path(image_path).name
    result = detector.detect(image, source=image_path)
    if annotated_dir is not None:
        save_color(result.annotated, Path(annotated_dir) / f'{Path(image_path).stem}_annotated.png')
    return detector.evaluate(image, GroundTruth(mask=mask), name, result=result)


def _pairs(img_dir: Path, gt_dir: Path) -> List[Tuple[Path, Path]]:
    if not img_dir.is_dir():
        raise ImageReadError(f'image directory not found: {img_dir}')
    images = list_images(img_dir)
    if not images:
        raise EmptyDatasetError(f'no images found in {img_dir}')
    pairs = []
    for image in images:
        gt = ground_truth_path(image, gt_dir)
        if not gt.is_file():
            raise MissingGroundTruthError(f'no ground-truth mask for {image} (looked for {gt})')
        pairs.append((image, gt))
    return pairs


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.scoring:
        cfg = cfg.model_copy(update={'scoring': args.scoring})
    pairs = _pairs(args.img_dir, args.gt_dir)
    annotated_dir = str(ensure_dir(args.annotated_dir)) if args.annotated_dir else None
    tasks = [(str(image), str(gt), cfg, annotated_dir) for image, gt in pairs]
    logger.info('evaluating %d images with %d job(s)', len(tasks), args.jobs)

    if args.jobs == 1:
        rows = [evaluate_one(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(evaluate_one, tasks))

    report = EvaluationReport(images=rows)
    ensure_dir(args.out.parent)
    write_report(report, args.out)
    mean = report.mean_row().recall(STAGE_POSTPROCESSING)
    print(f'mean recall: {100.0 * mean:.2f}% over {len(rows)} images')
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    overrides = {'n_exudates': args.exudates, 'n_haemorrhages': args.haemorrhages, 'noise_sigma': args.noise_sigma}
    spec = SynthSpec.model_validate({**cfg.synth.model_dump(),
                                     **{key: value for key, value in overrides.items() if value is not None}})
    out = ensure_dir(args.out)
    for index in range(args.count):
        image, gt = synthesize_fundus(args.seed + index, spec)
        save_color(image, out / f'{IMAGE_PREFIX}{index:03d}.png')
        save_mask(gt.mask, out / f'{GROUND_TRUTH_PREFIX}{index:03d}.png')
    logger.info('wrote %d image/mask pairs to %s', args.count, out)
    return EXIT_OK


def cmd_config(args: argparse.Namespace) -> int:
    sys.stdout.write(dump_config(load_config(args.config)))
    return EXIT_OK


COMMANDS = {
    'detect': cmd_detect,
    'eval': cmd_eval,
    'synth': cmd_synth,
    'config': cmd_config,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parses ``argv`` and runs the subcommand. Library errors become a one-line diagnostic and their exit code.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)
    try:
        return COMMANDS[args.command](args)
    except RetinoblobError as exc:
        logger.debug('command failed', exc_info=True)
        print(f'retinoblob: error: {exc}', file=sys.stderr)
        return exc.exit_code
