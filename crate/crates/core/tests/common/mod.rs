pub mod float_oracle;
