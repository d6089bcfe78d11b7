from pydantic import BaseModel, ConfigDict, model_validator

from .raster import BinaryMask, ColorImage, GrayImage, HueMap


class PreprocessOutput(BaseModel):
    """
    The post-CLAHE gray image, the two suspect masks and the hue map, all on the standard geometry.
    """
    model_config = ConfigDict(frozen=True)

    gray: GrayImage
    sei: BinaryMask
    shi: BinaryMask
    hue: HueMap

    @model_validator(mode='after')
    def check_dims(self) -> 'PreprocessOutput':
        dims = {self.gray.dims, self.sei.dims, self.shi.dims, self.hue.dims}
        if len(dims) != 1:
            raise ValueError(f'preprocess rasters disagree on dimensions: {sorted(dims)}')
        return self


class PreprocessStages(BaseModel):
    """
    Every intermediate raster of pre-processing, in pipeline order.
    """
    model_config = ConfigDict(frozen=True)

    resized: ColorImage
    gray: GrayImage
    clahe: GrayImage
    bright: GrayImage
    sei: BinaryMask
    dark: GrayImage
    shi: BinaryMask
    hue: HueMap

    def output(self) -> PreprocessOutput:
        return PreprocessOutput(gray=self.clahe, sei=self.sei, shi=self.shi, hue=self.hue)
